"""Bit-level arithmetic for points, flats, cosets, and quotients of PG(n,2)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

MIN_DIM = 2
MAX_DIM = 20  # word/bitset budget


class DimensionError(ValueError):
    """Ambient dimension outside the supported range."""


class PointParseError(ValueError):
    """Malformed point text or out-of-range index."""


def check_dim(n: int) -> int:
    if not MIN_DIM <= n <= MAX_DIM:
        raise DimensionError(f"projective dimension must lie in [{MIN_DIM}, {MAX_DIM}], got {n}")
    return n


def num_points(n: int) -> int:
    """Point count of PG(n,2)."""
    return (1 << (n + 1)) - 1


def iter_points(n: int) -> range:
    """All point masks of PG(n,2), ascending."""
    return range(1, 1 << (n + 1))


def dot(x: int, y: int) -> int:
    """The usual inner product: parity of the common support."""
    return (x & y).bit_count() & 1


def point_add(x: int, y: int) -> int:
    """Third point of the line through two distinct points."""
    if x == y:
        raise ValueError("projective sum requires two distinct points")
    return x ^ y


def is_collinear(x: int, y: int, z: int) -> bool:
    """Whether three pairwise distinct points lie on one line."""
    if x == y or y == z or x == z:
        raise ValueError("collinearity needs pairwise distinct points")
    return (x ^ y ^ z) == 0


def parse_point(text: str, n: int) -> int:
    """Point mask from hex ('0x000b'), indices ('0,1,3'), or a single index ('4')."""
    tok = text.strip()
    if not tok:
        raise PointParseError("empty point token")
    if tok.lower().startswith("0x"):
        try:
            mask = int(tok, 16)
        except ValueError as exc:
            raise PointParseError(f"bad hex point {tok!r}") from exc
    else:
        mask = 0
        for part in tok.split(","):
            part = part.strip()
            if not part.isdigit():
                raise PointParseError(f"bad index {part!r} in point {tok!r}")
            i = int(part)
            if i > n:
                raise PointParseError(f"index {i} exceeds dimension n={n} in point {tok!r}")
            if mask >> i & 1:
                raise PointParseError(f"repeated index {i} in point {tok!r}")
            mask |= 1 << i
    if mask == 0:
        raise PointParseError(f"zero mask is not a point: {tok!r}")
    if mask >= 1 << (n + 1):
        raise PointParseError(f"mask {mask:#x} out of range for n={n}")
    return mask


def format_point(mask: int, n: int, style: str = "idx") -> str:
    """Point text: ascending comma-separated indices, or zero-padded hex."""
    if mask <= 0 or mask >= 1 << (n + 1):
        raise PointParseError(f"mask {mask:#x} out of range for n={n}")
    if style == "idx":
        return ",".join(str(i) for i in range(n + 1) if mask >> i & 1)
    if style == "hex":
        width = max(4, -(-(n + 1) // 4))
        return f"0x{mask:0{width}x}"
    raise ValueError(f"unknown point style {style!r}")


@dataclass(frozen=True, slots=True)
class PointSet:
    """Set of points of PG(n,2) as one wide int: bit m set iff mask m is in the set."""

    n: int
    bits: int = 0

    @classmethod
    def of(cls, n: int, points: Iterable[int]) -> "PointSet":
        check_dim(n)
        bits = 0
        top = 1 << (n + 1)
        for p in points:
            if not 0 < p < top:
                raise ValueError(f"mask {p:#x} out of range for n={n}")
            bits |= 1 << p
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> "PointSet":
        check_dim(n)
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "PointSet":
        check_dim(n)
        return cls(n, ((1 << ((1 << (n + 1)) - 1)) - 1) << 1)

    def __contains__(self, mask: int) -> bool:
        return mask > 0 and (self.bits >> mask) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: "PointSet") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __or__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.bits | other.bits)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.bits & ~other.bits)

    def __xor__(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.n, self.bits ^ other.bits)

    def issubset(self, other: "PointSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "PointSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def complement(self) -> "PointSet":
        return PointSet.full(self.n) - self

    def add(self, mask: int) -> "PointSet":
        if not 0 < mask < 1 << (self.n + 1):
            raise ValueError(f"mask {mask:#x} out of range for n={self.n}")
        return PointSet(self.n, self.bits | 1 << mask)

    def translate(self, v: int) -> "PointSet":
        """Image under x -> v + x; rejects v inside the set, where zero would appear."""
        if not 0 < v < 1 << (self.n + 1):
            raise ValueError(f"mask {v:#x} out of range for n={self.n}")
        if (self.bits >> v) & 1:
            raise ValueError("translation vector lies in the set; image would contain zero")
        bits = 0
        for p in self:
            bits |= 1 << (p ^ v)
        return PointSet(self.n, bits)

    def min_point(self) -> int:
        if not self.bits:
            raise ValueError("empty point set has no minimum")
        low = self.bits & -self.bits
        return low.bit_length() - 1

    def sorted_points(self) -> list[int]:
        return list(self)


def seq_key(ps: PointSet) -> tuple[int, ...]:
    """Sort key: the ascending mask sequence (lexicographic set comparison)."""
    return tuple(ps)


def _echelonize(vectors: Iterable[int]) -> tuple[int, ...]:
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows.append(v)
            rows.sort(reverse=True)
    # back-substitute so each pivot appears in exactly one row
    for i, r in enumerate(rows):
        piv = 1 << (r.bit_length() - 1)
        for j in range(len(rows)):
            if j != i and rows[j] & piv:
                rows[j] ^= r
    return tuple(sorted(rows, reverse=True))


@dataclass(frozen=True)
class Subspace:
    """Projective subspace carried by a reduced echelon basis of masks."""

    n: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        """Projective dimension; -1 for the empty subspace."""
        return len(self.basis) - 1

    def __contains__(self, mask: int) -> bool:
        if mask <= 0 or mask >= 1 << (self.n + 1):
            return False
        return self.reduce(mask) == 0

    def reduce(self, v: int) -> int:
        """Canonical representative of v modulo this subspace."""
        for r in self.basis:
            if v & (1 << (r.bit_length() - 1)):
                v ^= r
        return v

    def vectors(self) -> Iterator[int]:
        """All 2^(dim+1) vectors of the underlying vector space, zero included."""
        d = len(self.basis)
        for combo in range(1 << d):
            v = 0
            c = combo
            while c:
                low = c & -c
                v ^= self.basis[low.bit_length() - 1]
                c ^= low
            yield v

    def members(self) -> PointSet:
        """The subspace as a point set (zero omitted)."""
        return PointSet.of(self.n, (v for v in self.vectors() if v))

    def coordinates(self, v: int) -> int:
        """Coefficient mask of v over the stored basis; raises if v is outside."""
        coeff = 0
        for i, r in enumerate(self.basis):
            if v & (1 << (r.bit_length() - 1)):
                v ^= r
                coeff |= 1 << i
        if v:
            raise ValueError("vector outside the subspace")
        return coeff

    def from_coordinates(self, coeff: int) -> int:
        """Inverse of coordinates: XOR combination of basis rows."""
        v = 0
        c = coeff
        while c:
            low = c & -c
            v ^= self.basis[low.bit_length() - 1]
            c ^= low
        return v

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the Zassenhaus stacked-basis trick."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        w = self.n + 1
        rows = [(u << w) | u for u in self.basis] + [v << w for v in other.basis]
        rows = list(_echelonize(rows))
        inter = [r & ((1 << w) - 1) for r in rows if (r >> w) == 0]
        return Subspace(self.n, _echelonize(v for v in inter if v))


def span(points: Iterable[int] | PointSet, n: int | None = None) -> Subspace:
    """Smallest subspace containing the given points."""
    if isinstance(points, PointSet):
        if n is None:
            n = points.n
        points = iter(points)
    if n is None:
        raise ValueError("span of a bare iterable needs the ambient dimension")
    check_dim(n)
    return Subspace(n, _echelonize(points))


def orthogonal_hyperplane(x: int, n: int) -> Subspace:
    """The hyperplane (x)^perp of points with even common support with x."""
    check_dim(n)
    if x <= 0 or x >= 1 << (n + 1):
        raise ValueError(f"mask {x:#x} out of range for n={n}")
    p = (x & -x).bit_length() - 1
    basis = []
    for i in range(n + 1):
        if i == p:
            continue
        v = 1 << i
        if x >> i & 1:
            v |= 1 << p
        basis.append(v)
    return Subspace(n, _echelonize(basis))


@dataclass(frozen=True)
class Coset:
    """Coset of a flat: all representative + flat-vector sums, size 2^(dim+1)."""

    representative: int
    flat: Subspace

    def members(self) -> PointSet:
        rep = self.representative
        return PointSet.of(self.flat.n, (rep ^ v for v in self.flat.vectors()))

    def __contains__(self, mask: int) -> bool:
        return self.flat.reduce(mask) == self.flat.reduce(self.representative)


def cosets_of(flat: Subspace, within: PointSet) -> list[Coset]:
    """Partition of a flat-saturated point set into cosets, by minimal representative."""
    if flat.n != within.n:
        raise ValueError("dimension mismatch")
    if any(p in within for p in flat.members()):
        raise ValueError("flat must be disjoint from the ambient set")
    out: list[Coset] = []
    remaining = within
    while remaining:
        rep = remaining.min_point()
        cs = Coset(rep, flat)
        mem = cs.members()
        if not mem.issubset(remaining):
            raise ValueError("point set is not a union of cosets of the flat")
        out.append(cs)
        remaining = remaining - mem
    return out


class QuotientMap:
    """Collapse of each coset of a flat to its canonical echelon representative."""

    def __init__(self, flat: Subspace):
        self.flat = flat
        self.n = flat.n

    def __call__(self, mask: int) -> int:
        """Image of a point; members of the flat map to zero."""
        if mask <= 0 or mask >= 1 << (self.n + 1):
            raise ValueError(f"mask {mask:#x} out of range for n={self.n}")
        return self.flat.reduce(mask)

    def image(self, points: PointSet) -> PointSet:
        """Image point set, zero images (flat members) dropped."""
        return PointSet.of(self.n, {self(p) for p in points} - {0})

    @property
    def image_dim(self) -> int:
        """Projective dimension of the quotient geometry."""
        return self.n - len(self.flat.basis)


def quotient_map(flat: Subspace) -> QuotientMap:
    """Quotient of the ambient space by a flat, as a point-to-point mapping."""
    return QuotientMap(flat)


def embed(ps: PointSet, n: int) -> PointSet:
    """Reinterpret a point set inside a higher-dimensional ambient space."""
    check_dim(n)
    if n < ps.n:
        raise ValueError("embedding cannot shrink the ambient dimension")
    return PointSet(n, ps.bits)


def restrict(ps: PointSet, flat: Subspace) -> PointSet:
    """Coordinates of a subset of a flat, as a point set of PG(flat.dim, 2)."""
    if flat.n != ps.n:
        raise ValueError("dimension mismatch")
    return PointSet.of(flat.dim, (flat.coordinates(p) for p in ps))


def unrestrict(small: PointSet, flat: Subspace) -> PointSet:
    """Inverse of restrict: coordinate masks back to ambient points."""
    if small.n != flat.dim:
        raise ValueError("coordinate dimension does not match the flat")
    return PointSet.of(flat.n, (flat.from_coordinates(c) for c in small))


def coordinates_in(v: int, basis: Sequence[int]) -> int | None:
    """Coefficient mask of v over an independent list of vectors, None if outside."""
    tagged = []
    for i, b in enumerate(basis):
        vec, tag = b, 1 << i
        for tv, tt in tagged:
            if vec & (1 << (tv.bit_length() - 1)):
                vec ^= tv
                tag ^= tt
        if not vec:
            raise ValueError("basis vectors are dependent")
        tagged.append((vec, tag))
        tagged.sort(key=lambda p: -p[0])
    coeff = 0
    for tv, tt in tagged:
        if v & (1 << (tv.bit_length() - 1)):
            v ^= tv
            coeff ^= tt
    return coeff if v == 0 else None
