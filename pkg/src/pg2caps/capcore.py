"""Cap predicates, secant algebra, completeness, periodicity, and the Plotkin double."""

from __future__ import annotations

from dataclasses import dataclass

from .gf2geom import PointSet, Subspace, dot, span


def oplus(x: PointSet, y: PointSet) -> PointSet:
    """All sums of distinct points, one from each set."""
    if x.n != y.n:
        raise ValueError("dimension mismatch")
    xs = x.sorted_points()
    ys = y.sorted_points()
    bits = 0
    for a in xs:
        for b in ys:
            if a != b:
                bits |= 1 << (a ^ b)
    return PointSet(x.n, bits)


def secants(s: PointSet) -> PointSet:
    """The secant set S (+) S."""
    pts = s.sorted_points()
    bits = 0
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            bits |= 1 << (a ^ b)
    return PointSet(s.n, bits)


def is_cap(s: PointSet) -> bool:
    """No two distinct members sum to a third member."""
    pts = s.sorted_points()
    sb = s.bits
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if (sb >> (a ^ b)) & 1:
                return False
    return True


@dataclass(frozen=True)
class CompletenessReport:
    """Cap verdict plus the points left off every secant."""

    is_cap: bool
    uncovered: PointSet  # E = domain minus (S and its secants)
    is_complete: bool
    secants: PointSet


def completeness(s: PointSet, within: Subspace | PointSet | None = None) -> CompletenessReport:
    """Completeness of a point set, in the whole space or inside a given flat."""
    if within is None:
        domain = PointSet.full(s.n)
    elif isinstance(within, Subspace):
        domain = within.members()
    else:
        domain = within
    if not s.issubset(domain):
        raise ValueError("point set is not contained in the stated domain")
    sec = secants(s)
    uncovered = domain - s - sec
    cap = is_cap(s)
    return CompletenessReport(cap, uncovered, cap and not uncovered, sec)


@dataclass(frozen=True)
class VertexSet:
    """All translation symmetries of a point set; degenerate for the empty set."""

    points: PointSet
    degenerate: bool = False

    def __bool__(self) -> bool:
        return bool(self.points)

    def as_subspace(self) -> Subspace:
        """Span check companion: the vertices together with zero form this subspace."""
        return span(self.points)


def vertex_set(x: PointSet) -> VertexSet:
    """Every v with v + X = X; for empty X every point qualifies (degenerate)."""
    if not x:
        return VertexSet(PointSet.full(x.n), degenerate=True)
    x0 = x.min_point()
    xb = x.bits
    good = 0
    for p in x:
        v = x0 ^ p
        if v == 0 or (xb >> v) & 1:
            continue
        if all((xb >> (v ^ q)) & 1 for q in x):
            good |= 1 << v
    return VertexSet(PointSet(x.n, good))


def is_periodic(x: PointSet) -> bool:
    """Whether some nonzero translation fixes the set (empty set: no)."""
    if not x:
        return False
    return bool(vertex_set(x).points)


def plotkin_double(x: PointSet, v: int) -> PointSet:
    """X together with v + X; v must lie outside span(X)."""
    if not 0 < v < 1 << (x.n + 1):
        raise ValueError(f"mask {v:#x} out of range for n={x.n}")
    if v in span(x):
        raise ValueError("doubling direction must lie outside the span of the set")
    bits = x.bits
    for p in x:
        bits |= 1 << (p ^ v)
    return PointSet(x.n, bits)


def undouble(s: PointSet, v: int) -> PointSet:
    """Section of a v-periodic set by the least hyperplane avoiding v."""
    vs = vertex_set(s)
    if vs.degenerate or v not in vs.points:
        raise ValueError("undouble requires a vertex of the set")
    # minimal normal with odd pairing against v is the lowest set bit of v
    m = v & -v
    half = PointSet.of(s.n, (p for p in s if dot(m, p) == 0))
    rebuilt = half.bits
    for p in half:
        rebuilt |= 1 << (p ^ v)
    if rebuilt != s.bits:
        raise AssertionError("vertex section failed to regenerate the set")
    return half


def periodic_section_vertex_check(s: PointSet, hyperplane: Subspace) -> VertexSet:
    """Vertex set of a complete cap's hyperplane section; each vertex carries to the cap."""
    if hyperplane.dim != s.n - 1:
        raise ValueError("section flat must be a hyperplane")
    rep = completeness(s)
    if not rep.is_complete:
        raise ValueError("section vertex inheritance is stated for complete caps")
    section = s & hyperplane.members()
    vs = vertex_set(section)
    if not vs.degenerate and vs.points:
        whole = vertex_set(s)
        if not vs.points.issubset(whole.points):
            raise AssertionError("section vertex is not a vertex of the whole cap")
    return vs
