"""Slicing frames: decompose a cap against a disjoint codimension-2 flat."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .capcore import oplus
from .gf2geom import (
    PointSet,
    Subspace,
    _echelonize,
    check_dim,
    cosets_of,
    dot,
    iter_points,
    orthogonal_hyperplane,
    span,
)


class FrameError(ValueError):
    """Frame does not fit the point set (overlap, bad normals, missing slice)."""


class ScaleRefusal(RuntimeError):
    """Requested computation exceeds the desk-scale budget."""

    def __init__(self, message: str, estimate: str | None = None):
        super().__init__(message)
        self.estimate = estimate


def nullspace_masks(rows: list[int], width: int) -> list[int]:
    """Basis of {v : dot(v, row) = 0 for all rows}, as masks of the given width."""
    ech = list(_echelonize(rows))
    pivots = [r.bit_length() - 1 for r in ech]
    free = [i for i in range(width) if i not in pivots]
    out = []
    for f in free:
        v = 1 << f
        # fix pivot coordinates so every row pairs evenly
        for r, p in zip(ech, pivots):
            if dot(v, r):
                v ^= 1 << p
        out.append(v)
    return out


@dataclass(frozen=True)
class SliceFrame:
    """A codimension-2 flat plus the three labeled hyperplanes through it."""

    n: int
    m_a: int  # normal of K_A
    m_b: int  # normal of K_B
    m_c: int  # normal of K_C

    def __post_init__(self):
        check_dim(self.n)
        top = 1 << (self.n + 1)
        for m in (self.m_a, self.m_b, self.m_c):
            if not 0 < m < top:
                raise FrameError(f"normal {m:#x} out of range for n={self.n}")
        if len({self.m_a, self.m_b, self.m_c}) != 3:
            raise FrameError("frame normals must be three distinct points")
        if self.m_a ^ self.m_b ^ self.m_c:
            raise FrameError("frame normals must sum to zero (three hyperplanes through one flat)")

    @cached_property
    def h_inf(self) -> Subspace:
        return Subspace(self.n, tuple(_echelonize(nullspace_masks([self.m_a, self.m_b], self.n + 1))))

    @cached_property
    def h_inf_points(self) -> PointSet:
        return self.h_inf.members()

    def hyperplane(self, which: str) -> Subspace:
        return orthogonal_hyperplane(getattr(self, f"m_{which}"), self.n)

    @cached_property
    def k_a(self) -> Subspace:
        return self.hyperplane("a")

    @cached_property
    def k_b(self) -> Subspace:
        return self.hyperplane("b")

    @cached_property
    def k_c(self) -> Subspace:
        return self.hyperplane("c")

    def _affine(self, m_self: int, m_other: int) -> PointSet:
        return PointSet.of(
            self.n,
            (p for p in iter_points(self.n) if dot(m_self, p) == 0 and dot(m_other, p) == 1),
        )

    @cached_property
    def h_a(self) -> PointSet:
        return self._affine(self.m_a, self.m_b)

    @cached_property
    def h_b(self) -> PointSet:
        return self._affine(self.m_b, self.m_a)

    @cached_property
    def h_c(self) -> PointSet:
        return self._affine(self.m_c, self.m_a)


def canonical_frame(n: int) -> SliceFrame:
    """Default frame: K_A, K_B normal to the two top basis vectors."""
    check_dim(n)
    return SliceFrame(n, 1 << n, 1 << (n - 1), (1 << n) | (1 << (n - 1)))


def frame_normals(h_inf: Subspace) -> tuple[int, int]:
    """Two normals cutting out a codimension-2 flat (the third is their sum)."""
    if len(h_inf.basis) != h_inf.n - 1:
        raise FrameError("flat must have codimension 2")
    m1, m2 = sorted(nullspace_masks(list(h_inf.basis), h_inf.n + 1))
    return m1, m2


def _seq(ps: PointSet) -> tuple[int, ...]:
    return tuple(ps)


def frame_for(s: PointSet, m1: int, m2: int, m_c: int | None = None) -> SliceFrame:
    """Label the three hyperplanes through a codim-2 flat against a point set.

    K_C carries the named normal (default: the smallest slice); of the other
    two, the one with the lexicographically smaller slice becomes K_A.
    """
    if m1 == m2 or not m1 or not m2:
        raise FrameError("need two distinct nonzero normals")
    normals = [m1, m2, m1 ^ m2]
    for p in s:
        if dot(m1, p) == 0 and dot(m2, p) == 0:
            raise FrameError(f"flat meets the point set at {p:#x}")
    slices = {m: PointSet.of(s.n, (p for p in s if dot(m, p) == 0)) for m in normals}
    if m_c is None:
        m_c = min(normals, key=lambda m: (len(slices[m]), _seq(slices[m]), m))
    elif m_c not in normals:
        raise FrameError("named C-normal is not one of the three hyperplanes")
    rest = sorted((m for m in normals if m != m_c), key=lambda m: (_seq(slices[m]), m))
    return SliceFrame(s.n, rest[0], rest[1], m_c)


def find_disjoint_codim2(s: PointSet) -> Subspace | None:
    """First codimension-2 flat disjoint from the set, scanning normal pairs ascending."""
    n = s.n
    if n > 12:
        raise ScaleRefusal(
            f"normal-pair scan over 2^{2 * (n + 1) - 1} pairs refused for n={n}",
            estimate=f"~{(1 << (n + 1)) ** 2 // 2} pairs",
        )
    pts = s.sorted_points()
    top = 1 << (n + 1)
    ortho = [0] * top  # per normal: bitmask over indices of orthogonal members
    for m in range(1, top):
        acc = 0
        for i, p in enumerate(pts):
            if dot(m, p) == 0:
                acc |= 1 << i
        ortho[m] = acc
    for m1 in range(1, top):
        o1 = ortho[m1]
        for m2 in range(m1 + 1, top):
            if o1 & ortho[m2] == 0:
                return Subspace(n, tuple(_echelonize(nullspace_masks([m1, m2], n + 1))))
    return None


def best_disjoint_frame(s: PointSet) -> SliceFrame | None:
    """Disjoint frame with the smallest C-slice trace, scanning all normal pairs.

    A set can miss many codimension-2 flats; the one whose induced smallest
    slice is tiniest gives the most structured decomposition. Ties go to the
    lowest normal masks.
    """
    n = s.n
    if n > 12:
        raise ScaleRefusal(
            f"normal-pair scan over 2^{2 * (n + 1) - 1} pairs refused for n={n}",
            estimate=f"~{(1 << (n + 1)) ** 2 // 2} pairs",
        )
    pts = s.sorted_points()
    top = 1 << (n + 1)
    full = (1 << len(pts)) - 1
    ortho = [0] * top
    for m in range(1, top):
        acc = 0
        for i, p in enumerate(pts):
            if dot(m, p) == 0:
                acc |= 1 << i
        ortho[m] = acc
    best = None
    for m1 in range(1, top):
        o1 = ortho[m1]
        for m2 in range(m1 + 1, top):
            o2 = ortho[m2]
            if o1 & o2:
                continue
            smallest = min(
                (o1 & ~o2 & full).bit_count(),
                (~o1 & o2 & full).bit_count(),
                (~o1 & ~o2 & full).bit_count(),
            )
            if best is None or smallest < best[0]:
                best = (smallest, m1, m2)
                if smallest == 0:
                    break
        if best is not None and best[0] == 0:
            break
    if best is None:
        return None
    return frame_for(s, best[1], best[2])


@dataclass(frozen=True)
class CosetPair:
    """Matched cosets of span(C) in the A- and B-slices, with the cap's trace."""

    index: int
    ha: PointSet
    hb: PointSet
    a: PointSet
    b: PointSet


@dataclass(frozen=True)
class SliceDecomposition:
    """Full bookkeeping of a cap sliced by a frame."""

    frame: SliceFrame
    cap: PointSet
    a: PointSet
    b: PointSet
    c: PointSet
    a_prime: PointSet
    b_prime: PointSet
    c_prime: PointSet
    f_tilde: Subspace
    f: Subspace
    f_points: PointSet
    c_hat: PointSet
    r: int
    coset_pairs: tuple[CosetPair, ...]
    pair_eq3: tuple[bool, ...]
    pair_tags: tuple[str | None, ...]
    t: int
    u: int
    s: int
    m: int
    empty_c_is_affine_complement: bool | None


def _pair_eq3(pair: CosetPair, c: PointSet) -> bool:
    return (
        oplus(pair.a, c) == pair.hb - pair.b
        and oplus(pair.b, c) == pair.ha - pair.a
    )


def _classify_shape(pair: CosetPair, c: PointSet, z0: int | None) -> str:
    a, b = pair.a, pair.b
    if a == pair.ha and not b:
        return "TrivialA"
    if b == pair.hb and not a:
        return "TrivialB"
    if len(a) == 1 and b == pair.hb - oplus(a, c):
        return "SingletonA"
    if len(b) == 1 and a == pair.ha - oplus(b, c):
        return "SingletonB"
    if z0 is not None and len(a) == 2 and len(b) == 2:
        a1, a2 = a
        b1, b2 = b
        if a1 ^ a2 == b1 ^ b2 and a1 ^ a2 != z0:
            return "Doubleton"
    return "Other"


def c_sum(c: PointSet) -> int | None:
    """XOR of the four slice points (the z0 of the four-point geometry)."""
    if len(c) != 4:
        return None
    z0 = 0
    for p in c:
        z0 ^= p
    return z0


def decompose(s: PointSet, frame: SliceFrame) -> SliceDecomposition:
    """Slice a point set by a frame into the A/B/C apparatus with coset pairing."""
    if s.n != frame.n:
        raise FrameError("dimension mismatch")
    if not s.isdisjoint(frame.h_inf_points):
        raise FrameError("the codimension-2 flat must avoid the point set")
    h_a, h_b, h_c = frame.h_a, frame.h_b, frame.h_c
    a, b, c = s & h_a, s & h_b, s & h_c
    a_pr, b_pr, c_pr = h_a - a, h_b - b, h_c - c

    if not c:
        affine = (s == h_a | h_b)
        empty_f = span(PointSet.empty(s.n))
        return SliceDecomposition(
            frame, s, a, b, c, a_pr, b_pr, c_pr,
            empty_f, empty_f, PointSet.empty(s.n), PointSet.empty(s.n), -1,
            (), (), (), 0, 0, 0, 0, affine,
        )

    f_tilde = span(c)
    r = f_tilde.dim
    f_points = f_tilde.members() & frame.h_inf_points
    f_sub = span(f_points)
    c_hat = f_tilde.members() - f_points

    ha_cosets = [cs.members() for cs in cosets_of(f_sub, h_a)]
    c_min = c_hat.min_point()
    pairs = []
    eq3 = []
    tags: list[str | None] = []
    z0 = c_sum(c)
    for i, ha_i in enumerate(ha_cosets):
        rep = c_min ^ ha_i.min_point()
        hb_i = PointSet.of(s.n, (rep ^ w for w in f_sub.vectors()))
        pair = CosetPair(i, ha_i, hb_i, s & ha_i, s & hb_i)
        pairs.append(pair)
        ok = _pair_eq3(pair, c)
        eq3.append(ok)
        tags.append(_classify_shape(pair, c, z0) if ok else None)

    t = tags.count("TrivialA")
    u = tags.count("TrivialB")
    s_count = tags.count("SingletonA") + tags.count("SingletonB")
    m = tags.count("Doubleton")
    return SliceDecomposition(
        frame, s, a, b, c, a_pr, b_pr, c_pr,
        f_tilde, f_sub, f_points, c_hat, r,
        tuple(pairs), tuple(eq3), tuple(tags), t, u, s_count, m, None,
    )


def coset_equations_hold(d: SliceDecomposition) -> list[bool]:
    """Per coset pair: both slice equations hold as set equalities."""
    return [_pair_eq3(p, d.c) for p in d.coset_pairs]


@dataclass(frozen=True)
class GlobalEquations:
    """Verdicts for the two global completeness equations, with failure detail."""

    eq1: bool
    eq2: bool
    eq1_failures: tuple[str, ...]
    eq2_uncovered: PointSet

    def __iter__(self):
        return iter((self.eq1, self.eq2))


def global_completeness_equations(d: SliceDecomposition) -> GlobalEquations:
    """The three cross-slice equalities, and secant coverage of the flat at infinity."""
    fails = []
    if oplus(d.a, d.b) != d.c_prime:
        fails.append("A+B=C'")
    if oplus(d.a, d.c) != d.b_prime:
        fails.append("A+C=B'")
    if oplus(d.b, d.c) != d.a_prime:
        fails.append("B+C=A'")
    covered = oplus(d.a, d.a) | oplus(d.b, d.b) | oplus(d.c, d.c)
    uncovered = d.frame.h_inf_points - covered
    return GlobalEquations(not fails, not uncovered, tuple(fails), uncovered)


def classify_pair(d: SliceDecomposition, i: int) -> str:
    """Solution-family tag of one coset pair; the pair must satisfy the coset equations."""
    pair = d.coset_pairs[i]
    if not _pair_eq3(pair, d.c):
        raise ValueError(f"coset pair {i} does not satisfy the coset equations")
    return _classify_shape(pair, d.c, c_sum(d.c))


def pair_geometry(ha: PointSet, c: PointSet) -> tuple[PointSet, PointSet, Subspace, int]:
    """From one A-side coset and C: the matched B-side coset, span data, and r."""
    if not c:
        raise ValueError("need a nonempty C slice")
    f_tilde = span(c)
    r = f_tilde.dim
    c_min = c.min_point()
    w0 = span([c_min ^ p for p in c if p != c_min], c.n)
    if len(ha) != 1 << r:
        raise ValueError("A-side coset size does not match span(C)")
    a_min = ha.min_point()
    if ha != PointSet.of(c.n, (a_min ^ w for w in w0.vectors())):
        raise ValueError("A-side set is not a coset of the span of C")
    hb = PointSet.of(c.n, (c_min ^ a_min ^ w for w in w0.vectors()))
    return ha, hb, w0, r


def enumerate_pair_solutions(ha: PointSet, c: PointSet) -> list[tuple[PointSet, PointSet]]:
    """All subset pairs of one coset pair solving the coset equations.

    For r <= 3 this is the literal scan over all 2^(2*2^r) (A, B) subset pairs.
    At r = 4 the first equation forces B from A, so the scan covers the same
    solution set in 2^16 steps instead of 2^32.
    """
    n = c.n
    ha, hb, w0, r = pair_geometry(ha, c)
    if r > 4:
        raise ScaleRefusal(f"pair-solution scan refused for r={r}", estimate=f"2^{2 << r} pairs")
    ha_list = ha.sorted_points()
    hb_list = hb.sorted_points()
    size = 1 << r
    ha_bits, hb_bits = ha.bits, hb.bits
    ta = [0] * size  # per A element: bitmask of its sums with C
    for j, p in enumerate(ha_list):
        acc = 0
        for q in c:
            acc |= 1 << (p ^ q)
        ta[j] = acc
    tb = [0] * size
    for j, p in enumerate(hb_list):
        acc = 0
        for q in c:
            acc |= 1 << (p ^ q)
        tb[j] = acc
    ncombo = 1 << size
    a_mask = [0] * ncombo  # subset combo -> point bitmask
    a_sum = [0] * ncombo  # subset combo -> (subset + C) bitmask
    b_mask = [0] * ncombo
    b_sum = [0] * ncombo
    for combo in range(1, ncombo):
        low = combo & -combo
        j = low.bit_length() - 1
        prev = combo ^ low
        a_mask[combo] = a_mask[prev] | (1 << ha_list[j])
        a_sum[combo] = a_sum[prev] | ta[j]
        b_mask[combo] = b_mask[prev] | (1 << hb_list[j])
        b_sum[combo] = b_sum[prev] | tb[j]

    out = []
    if r <= 3:
        for ca in range(ncombo):
            want_a = ha_bits & ~a_mask[ca]
            sa = a_sum[ca]
            for cb in range(ncombo):
                if sa == hb_bits & ~b_mask[cb] and b_sum[cb] == want_a:
                    out.append((a_mask[ca], b_mask[cb]))
    else:
        for ca in range(ncombo):
            forced = hb_bits & ~a_sum[ca]
            cb = 0
            for j, p in enumerate(hb_list):
                if (forced >> p) & 1:
                    cb |= 1 << j
            if b_mask[cb] != forced:
                continue
            if a_sum[ca] == hb_bits & ~b_mask[cb] and b_sum[cb] == ha_bits & ~a_mask[ca]:
                out.append((a_mask[ca], b_mask[cb]))
    out.sort()
    return [(PointSet(n, am), PointSet(n, bm)) for am, bm in out]
