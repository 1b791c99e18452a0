"""Brute-force oracles the library is measured against."""

from itertools import combinations

from pg2caps import PointSet, iter_points


def brute_is_cap(s: PointSet) -> bool:
    """No two distinct members may sum to a third."""
    pts = s.sorted_points()
    return not any((x ^ y) in s for x, y in combinations(pts, 2))


def brute_is_complete(s: PointSet) -> bool:
    """Cap such that every outside point lies on a secant."""
    if not brute_is_cap(s):
        return False
    covered = set(s.sorted_points())
    for x, y in combinations(s.sorted_points(), 2):
        covered.add(x ^ y)
    return all(p in covered for p in iter_points(s.n))


def brute_uncovered(s: PointSet) -> set[int]:
    covered = set(s.sorted_points())
    for x, y in combinations(s.sorted_points(), 2):
        covered.add(x ^ y)
    return {p for p in iter_points(s.n) if p not in covered}


def brute_vertices(s: PointSet) -> set[int]:
    """All nonzero v with v + S = S, by direct translation."""
    pts = set(s.sorted_points())
    return {v for v in iter_points(s.n) if {v ^ p for p in pts} == pts}


def brute_rank(vectors) -> int:
    """GF(2) rank by plain elimination."""
    rows = []
    for v in vectors:
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows.append(v)
    return len(rows)


def rand_subset(n: int, rng, k: int | None = None) -> PointSet:
    pts = list(iter_points(n))
    if k is None:
        k = rng.randint(0, len(pts))
    return PointSet.of(n, rng.sample(pts, k))


def rand_cap(n: int, rng, maximal: bool = True) -> PointSet:
    """Random greedy complete cap, or a random prefix of one (still a cap)."""
    pts = list(iter_points(n))
    rng.shuffle(pts)
    chosen: list[int] = []
    sums: set[int] = set()
    for p in pts:
        if p in sums:
            continue
        sums.update(p ^ q for q in chosen)
        chosen.append(p)
    if not maximal:
        chosen = chosen[: rng.randint(1, len(chosen))]
    return PointSet.of(n, chosen)
