"""Brute-force cap searches: exhaustive enumeration, spectra, partition hunts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product

from .capcore import completeness, is_cap, is_periodic, oplus
from .constructions import (
    CapPartition,
    ConstructionError,
    c4_construct,
    c4_size,
    family_cap,
    family_size_by_s,
    pair_layout,
)
from .gf2geom import PointSet, span
from .slices import ScaleRefusal, SliceFrame, canonical_frame, enumerate_pair_solutions


@dataclass(frozen=True)
class SearchConstraints:
    """What to search for: ambient dimension plus size and slice filters."""

    n: int
    min_size: int | None = None
    max_size: int | None = None
    c_size: int | None = None
    c_span_dim: int | None = None
    frame_disjoint: bool = False
    large: bool = False
    periodic: bool | None = None
    frame: SliceFrame | None = None

    def __post_init__(self):
        if self.min_size is not None and self.min_size < 0:
            raise ValueError("min_size must be nonnegative")
        if (
            self.min_size is not None
            and self.max_size is not None
            and self.min_size > self.max_size
        ):
            raise ValueError("min_size exceeds max_size")
        if self.c_size is not None and self.c_size < 0:
            raise ValueError("c_size must be nonnegative")
        if self.frame is not None and self.frame.n != self.n:
            raise ValueError("frame dimension disagrees with n")

    def resolved_frame(self) -> SliceFrame:
        return self.frame if self.frame is not None else canonical_frame(self.n)

    def admits(self, s: PointSet) -> bool:
        """Whether a complete cap matches every requested filter."""
        if self.min_size is not None and len(s) < self.min_size:
            return False
        if self.max_size is not None and len(s) > self.max_size:
            return False
        if self.large and len(s) < (1 << (self.n - 1)) + 1:
            return False
        if self.periodic is not None and is_periodic(s) != self.periodic:
            return False
        needs_frame = self.frame_disjoint or self.c_size is not None or self.c_span_dim is not None
        if needs_frame:
            frame = self.resolved_frame()
            if self.frame_disjoint and s & frame.h_inf_points:
                return False
            c = s & frame.h_c
            if self.c_size is not None and len(c) != self.c_size:
                return False
            if self.c_span_dim is not None and span(c).dim != self.c_span_dim:
                return False
        return True


@dataclass(frozen=True)
class Spectrum:
    """Achieved complete-cap sizes with one verified witness apiece."""

    sizes: tuple[int, ...]
    witnesses: dict
    meta: dict = field(default_factory=dict)


def enumerate_caps(
    n: int,
    complete_only: bool = True,
    min_size: int | None = None,
    max_size: int | None = None,
    shard: tuple[int, int] | None = None,
):
    """Depth-first cap enumeration in ascending mask order, one visit per cap.

    With complete_only=False every nonempty cap is yielded. Sharding keys on
    the least point, so merging all shards reproduces the full run.
    """
    npts = (1 << (n + 1)) - 1
    full = ((1 << (npts + 1)) - 1) & ~1

    def emit(size: int) -> bool:
        if min_size is not None and size < min_size:
            return False
        if max_size is not None and size > max_size:
            return False
        return True

    def rec(chosen, cbits, sbits, start):
        covered = cbits | sbits
        if complete_only:
            if covered == full and emit(len(chosen)):
                yield PointSet.of(n, chosen)
        elif chosen and emit(len(chosen)):
            yield PointSet.of(n, chosen)
        if max_size is not None and len(chosen) >= max_size:
            return
        for p in range(start, npts + 1):
            if (covered >> p) & 1:
                continue
            new_secants = 0
            for x in chosen:
                new_secants |= 1 << (x ^ p)
            chosen.append(p)
            yield from rec(chosen, cbits | (1 << p), sbits | new_secants, p + 1)
            chosen.pop()

    for first in range(1, npts + 1):
        if shard is not None and first % shard[1] != shard[0]:
            continue
        yield from rec([first], 1 << first, 0, first + 1)


def _structured_estimate(c: SearchConstraints) -> int:
    frame = c.resolved_frame()
    h_c_pts = frame.h_c.sorted_points()
    if c.c_size in (None, 0):
        return 1
    n_subsets = 1
    for i in range(c.c_size):
        n_subsets = n_subsets * (len(h_c_pts) - i) // (i + 1)
    probe = None
    for combo in combinations(h_c_pts, c.c_size):
        cand = PointSet.of(c.n, combo)
        if is_cap(cand) and (c.c_span_dim is None or span(cand).dim == c.c_span_dim):
            probe = cand
            break
    if probe is None:
        return 0
    _, _, _, layout = pair_layout(frame, probe)
    per_pair = len(enumerate_pair_solutions(layout[0][0], probe))
    return n_subsets * per_pair ** len(layout)


def _bits(points) -> int:
    b = 0
    for p in points:
        b |= 1 << p
    return b


def _structured_complete(c: SearchConstraints, budget: int, shard=None):
    """Frame-disjoint complete caps with a prescribed C-slice size.

    Per C-subset, per-pair solutions of the coset equations are combined and
    kept when their accumulated sums cover the off-C part of the C-slice and
    the hyperplane at infinity; survivors get the definitional oracle.
    """
    frame = c.resolved_frame()
    n = c.n
    if c.c_size == 0:
        s = frame.h_a | frame.h_b
        rep = completeness(s)
        if rep.is_cap and rep.is_complete and c.admits(s):
            yield s
        return
    estimate = _structured_estimate(c)
    if estimate > budget:
        raise ScaleRefusal(
            f"structured search needs about {estimate} combination checks "
            f"(budget {budget})",
            estimate=estimate,
        )
    h_c_pts = frame.h_c.sorted_points()
    inf_bits = _bits(frame.h_inf_points)
    for idx, combo in enumerate(combinations(h_c_pts, c.c_size)):
        if shard is not None and idx % shard[1] != shard[0]:
            continue
        cset = PointSet.of(n, combo)
        if not is_cap(cset):
            continue
        if c.c_span_dim is not None and span(cset).dim != c.c_span_dim:
            continue
        _, _, _, layout = pair_layout(frame, cset)
        entries = [enumerate_pair_solutions(ha, cset) for ha, _ in layout]
        npairs = len(layout)
        needed = (_bits(frame.h_c) & ~_bits(cset)) | inf_bits
        base = _bits(oplus(cset, cset))
        self_masks = [
            [_bits(oplus(a, b)) | _bits(oplus(a, a)) | _bits(oplus(b, b)) for a, b in entries[i]]
            for i in range(npairs)
        ]
        cross_masks = {}
        for i in range(npairs):
            for j in range(i + 1, npairs):
                tbl = []
                for ai, bi in entries[i]:
                    row = []
                    for aj, bj in entries[j]:
                        row.append(
                            _bits(oplus(ai, bj))
                            | _bits(oplus(aj, bi))
                            | _bits(oplus(ai, aj))
                            | _bits(oplus(bi, bj))
                        )
                    tbl.append(row)
                cross_masks[i, j] = tbl
        index_pairs = list(cross_masks)
        for pick in product(*(range(len(entries[i])) for i in range(npairs))):
            acc = base
            for i in range(npairs):
                acc |= self_masks[i][pick[i]]
            for i, j in index_pairs:
                acc |= cross_masks[i, j][pick[i]][pick[j]]
            if acc & needed != needed:
                continue
            s = cset
            for i in range(npairs):
                a, b = entries[i][pick[i]]
                s = s | a | b
            rep = completeness(s)
            if rep.is_cap and rep.is_complete and c.admits(s):
                yield s


def enumerate_complete_caps(
    c: SearchConstraints,
    mode: str | None = None,
    budget: int = 20_000_000,
    shard: tuple[int, int] | None = None,
):
    """Stream every complete cap matching the constraints.

    Unconstrained exhaustive runs are limited to n <= 5; fixing the C-slice
    size switches to the structured search, allowed to n <= 8 subject to a
    combination budget. Structured mode enumerates frame-disjoint caps (the
    scope of the slicing theory). The caller may force a mode.
    """
    if mode is None:
        mode = "structured" if c.c_size is not None and c.n > 4 else "exhaustive"
    if mode == "exhaustive":
        if c.n > 5:
            raise ScaleRefusal(
                f"exhaustive enumeration over {(1 << (c.n + 1)) - 1} points is out of reach",
                estimate=2 ** ((1 << (c.n + 1)) - 1),
            )
        for s in enumerate_caps(
            c.n, complete_only=True, min_size=c.min_size, max_size=c.max_size, shard=shard
        ):
            if c.admits(s):
                yield s
        return
    if mode != "structured":
        raise ValueError(f"unknown mode {mode!r}")
    if c.c_size is None:
        raise ValueError("structured mode needs a C-slice size constraint")
    if c.n > 8:
        raise ScaleRefusal(
            "structured search is limited to n <= 8",
            estimate=_structured_estimate(c) if c.n <= 10 else None,
        )
    yield from _structured_complete(c, budget, shard=shard)


def spectrum(c: SearchConstraints, mode: str | None = None, budget: int = 20_000_000) -> Spectrum:
    """Achieved size set with verified witnesses, by search or by construction."""
    if mode == "construct":
        return _construct_spectrum(c)
    if mode is None:
        mode = "structured" if c.c_size is not None and c.n > 4 else "exhaustive"
    witnesses: dict[int, PointSet] = {}
    count = 0
    for s in enumerate_complete_caps(c, mode=mode, budget=budget):
        count += 1
        witnesses.setdefault(len(s), s)
    for size, w in witnesses.items():
        rep = completeness(w)
        if not (rep.is_cap and rep.is_complete and len(w) == size and c.admits(w)):
            raise AssertionError("spectrum witness failed re-verification")
    return Spectrum(
        tuple(sorted(witnesses)),
        dict(sorted(witnesses.items())),
        {"mode": mode, "caps_seen": count},
    )


def _construct_spectrum(c: SearchConstraints) -> Spectrum:
    """Sizes reachable by the recipe catalog for |C| = 3 or |C| = 4."""
    n = c.n
    witnesses: dict[int, PointSet] = {}
    not_produced = []
    if c.c_size == 3:
        npairs = 1 << (n - 3)
        for s_count in range(1, npairs + 1):
            try:
                cap, cert = family_cap(n, 2, s_count)
            except ConstructionError as exc:
                not_produced.append(
                    {"s": s_count, "size": family_size_by_s(n, 2, s_count), "reason": str(exc)}
                )
                continue
            if not cert.verified:
                raise AssertionError("construction certificate failed")
            witnesses.setdefault(len(cap), cap)
    elif c.c_size == 4:
        npairs = 1 << (n - 4)
        for m in range(npairs):
            for s_count in range(npairs):
                if not 1 <= m + s_count <= npairs - 1 or (m, s_count) == (1, 0):
                    continue
                try:
                    cap, cert = c4_construct(n, m, s_count)
                except ConstructionError as exc:
                    not_produced.append(
                        {"m": m, "s": s_count, "size": c4_size(n, m, s_count), "reason": str(exc)}
                    )
                    continue
                if not cert.verified:
                    raise AssertionError("construction certificate failed")
                witnesses.setdefault(len(cap), cap)
    else:
        raise ValueError("construction-backed spectra cover |C| = 3 and |C| = 4 only")
    for size, w in witnesses.items():
        rep = completeness(w)
        if not (rep.is_cap and rep.is_complete and len(w) == size):
            raise AssertionError("spectrum witness failed re-verification")
    return Spectrum(
        tuple(sorted(witnesses)),
        dict(sorted(witnesses.items())),
        {"mode": "construct", "not_produced": not_produced},
    )


# ------------------------------------------------------------ partition hunts


def _labels_to_partition(k: int, r: int, labels) -> CapPartition:
    parts: dict[int, set[int]] = {w: set() for w in range(1 << r)}
    for x, w in enumerate(labels):
        parts[w].add(x)
    return CapPartition(k, r, parts)


def _exhaustive_partition(k: int, r: int) -> CapPartition | None:
    size = 1 << k
    nlabels = 1 << r
    full = (1 << size) - 2
    half = size // 2
    labels = [0] * size
    cover = [0] * nlabels
    pair_count = [0] * size

    def rec(x: int) -> bool:
        if x == size:
            return all(cover[w] & full == full for w in range(nlabels))
        for lab in range(nlabels):
            labels[x] = lab
            added = []
            for y in range(x):
                z = x ^ y
                w = lab ^ labels[y]
                pair_count[z] += 1
                if not (cover[w] >> z) & 1:
                    cover[w] |= 1 << z
                    added.append((w, z))
            # a point's missing types can't outnumber its unassigned pairs
            ok = True
            for z in range(1, size):
                missing = sum(1 for w in range(nlabels) if not (cover[w] >> z) & 1)
                if missing > half - pair_count[z]:
                    ok = False
                    break
            if ok and rec(x + 1):
                return True
            for w, z in added:
                cover[w] &= ~(1 << z)
            for y in range(x):
                pair_count[x ^ y] -= 1
        return False

    if rec(0):
        return _labels_to_partition(k, r, labels)
    return None


def _random_partition(
    k: int, r: int, seed: int, restarts: int = 60, steps: int = 4000
) -> CapPartition | None:
    rng = random.Random(seed)
    size = 1 << k
    nlabels = 1 << r
    full = (1 << size) - 2

    def deficiency(labels) -> int:
        cover = [0] * nlabels
        for x in range(size):
            lx = labels[x]
            for y in range(x + 1, size):
                cover[lx ^ labels[y]] |= 1 << (x ^ y)
        return sum(bin(full & ~cover[w]).count("1") for w in range(nlabels))

    for _ in range(restarts):
        labels = [rng.randrange(nlabels) for _ in range(size)]
        best = deficiency(labels)
        for _ in range(steps):
            if best == 0:
                return _labels_to_partition(k, r, labels)
            x = rng.randrange(size)
            old = labels[x]
            scored = []
            for lab in range(nlabels):
                if lab == old:
                    continue
                labels[x] = lab
                scored.append((deficiency(labels), lab))
            labels[x] = old
            rng.shuffle(scored)
            sc, lab = min(scored, key=lambda t: t[0])
            if sc <= best:
                labels[x] = lab
                best = sc
        if best == 0:
            return _labels_to_partition(k, r, labels)
    return None


def partition_search(
    k: int, r: int, mode: str = "exhaustive", seed: int = 0
) -> CapPartition | None:
    """Hunt a covering partition; exhaustive None is a proof of absence,
    randomized None only means none was found."""
    if mode == "exhaustive":
        estimate = (1 << r) ** (1 << k)
        if estimate > 1 << 32:
            raise ScaleRefusal(
                f"exhaustive partition search over {estimate} assignments refused",
                estimate=estimate,
            )
        return _exhaustive_partition(k, r)
    if mode == "randomized":
        return _random_partition(k, r, seed)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class CountingCheck:
    """Secant-count arithmetic for a hypothetical covering partition."""

    k: int
    r: int
    r_critical: bool
    secant_bound_holds: bool
    identity_holds: bool | None
    candidate_counts: dict | None
    candidate_counts_ok: bool | None
    refutes: bool

    def __bool__(self) -> bool:
        return not self.refutes


def counting_identity_check(k: int, r: int, p: CapPartition | None = None) -> CountingCheck:
    """Check the r = k-1 refutation arithmetic and the global secant bound.

    At r = k-1 exact once-per-type coverage forces the chain
    2^(2k) = 2^r(2^k - 1) + 2^k - 2, which fails, refuting such partitions.
    For r < k-1 the bound is slack and nothing is refuted. A candidate
    partition additionally gets its per-type secant counts checked against
    the minimum 2^k - 1 needed for coverage.
    """
    secant_bound = (1 << (k - 1)) * ((1 << k) - 1) >= (1 << r) * ((1 << k) - 1)
    critical = r == k - 1
    identity = None
    if critical:
        identity = 1 << (2 * k) == (1 << r) * ((1 << k) - 1) + (1 << k) - 2
    counts = None
    counts_ok = None
    if p is not None:
        sizes = {w: len(xs) for w, xs in p.parts.items()}
        counts = {}
        for w in range(1 << p.r):
            if w == 0:
                counts[0] = sum(x * (x - 1) // 2 for x in sizes.values())
            else:
                counts[w] = sum(
                    sizes[u] * sizes[u ^ w] for u in range(1 << p.r) if u < u ^ w
                )
        counts_ok = all(cnt >= (1 << p.k) - 1 for cnt in counts.values())
    refutes = (not secant_bound) or (critical and not identity)
    if counts_ok is not None:
        refutes = refutes or not counts_ok
    return CountingCheck(k, r, critical, secant_bound, identity, counts, counts_ok, refutes)


# ------------------------------------------------------ the weight-slice seed


def example31_extension(asharp: PointSet, v: int) -> PointSet:
    """Extend a half-slice seed to a periodic A with vertex v filling its slice sums.

    Adds whole v-lines from the slice remainder until |A| = 2^(n-2), then
    verifies v + A = A and that the pair sums cover the hyperplane at
    infinity exactly.
    """
    n = asharp.n
    frame = canonical_frame(n)
    if not asharp.issubset(frame.h_a):
        raise ConstructionError("the seed must lie in the affine A-slice")
    if v not in frame.h_inf:
        raise ConstructionError("the period must be an infinity point")
    u = asharp | PointSet.of(n, (v ^ p for p in asharp))
    target = 1 << (n - 2)
    need = target - len(u)
    if need < 0 or need % 2:
        raise ConstructionError("seed cannot reach half the slice by whole v-lines")
    lines = [p for p in frame.h_a - u if p < p ^ v]
    want = need // 2
    if want > len(lines):
        raise ConstructionError("not enough free v-lines in the slice")
    for start in range(len(lines) - want + 1):
        a = u
        for p in lines[start : start + want]:
            a = a.add(p).add(p ^ v)
        if (
            len(a) == target
            and PointSet.of(n, (v ^ p for p in a)) == a
            and oplus(a, a) == frame.h_inf_points
        ):
            return a
    raise ConstructionError("no v-line selection completed the extension")
