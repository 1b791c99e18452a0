"""Reference data: named caps, frames, and the seed partition used across tests."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .gf2geom import PointSet, parse_point
from .slices import SliceFrame, canonical_frame


def _pts(n: int, text: str) -> PointSet:
    return PointSet.of(n, (parse_point(tok, n) for tok in text.split()))


@dataclass(frozen=True)
class TangentEntry:
    """An A-side slice plus the geometry needed to grow a tangent-point cap."""

    n: int
    frame: SliceFrame
    a: PointSet
    c0: int


def pg5_aperiodic_halfslice() -> TangentEntry:
    """Half-size non-periodic A-slice in PG(5,2); its tangent cap is complete."""
    n = 5
    return TangentEntry(n, canonical_frame(n), _pts(n, "4 0,4 1,4 2,4 3,4 0,1,2,3,4 0,1,3,4 0,2,3,4"), parse_point("4,5", n))


def pg5_periodic_halfslice() -> TangentEntry:
    """Half-size periodic A-slice in PG(5,2); its tangent cap leaves three points bare."""
    n = 5
    return TangentEntry(n, canonical_frame(n), _pts(n, "4 0,4 1,4 0,1,4 2,4 0,2,4 3,4 0,3,4"), parse_point("4,5", n))


PG5_PERIODIC_UNCOVERED = "0,4,5 1,2,3 0,1,2,3"


def pg4_near_halfslice() -> TangentEntry:
    """Non-periodic A-slice in PG(4,2) whose secants miss one point at infinity."""
    n = 4
    return TangentEntry(n, canonical_frame(n), _pts(n, "3 0,3 1,3 2,3"), parse_point("3,4", n))


PG4_MISSED_POINT = "0,1,2"


@dataclass(frozen=True)
class Pg9Entry:
    """Weight-selected A-slice of PG(9,2) whose secants already cover infinity."""

    n: int
    frame: SliceFrame
    a_sharp: PointSet
    v: int


def pg9_weight_slice() -> Pg9Entry:
    """Points of the A-slice whose support over the first eight indices has size 0, 1, 5, or 8."""
    n = 9
    marker = 1 << 8
    pts = [marker, marker | 0xFF]
    pts += [marker | (1 << i) for i in range(8)]
    pts += [marker | sum(1 << i for i in combo) for combo in combinations(range(8), 5)]
    return Pg9Entry(n, canonical_frame(n), PointSet.of(n, pts), parse_point("0,1", n))


@dataclass(frozen=True)
class PlaneSliceEntry:
    """PG(7,2) frame with a four-point span-coset C and its bookkeeping."""

    n: int
    frame: SliceFrame
    c: PointSet
    c0: int
    f_points: PointSet
    ha1: PointSet
    a0: int
    l_basis: tuple[int, ...]


def pg7_plane_slice() -> PlaneSliceEntry:
    n = 7
    return PlaneSliceEntry(
        n,
        canonical_frame(n),
        _pts(n, "0,6,7 1,6,7 0,1,6,7"),
        parse_point("6,7", n),
        _pts(n, "0 1 0,1"),
        _pts(n, "6 0,6 1,6 0,1,6"),
        parse_point("6", n),
        (1 << 2, 1 << 3, 1 << 4, 1 << 5, 1 << 6),
    )


PG7_CLASS_OF_16 = (
    "1 1,2 1,3 1,4 1,5 1,2,3 1,2,4 1,2,5 1,3,4 1,3,5 1,4,5 "
    "1,2,3,4 1,2,3,5 1,2,4,5 1,3,4,5 1,2,3,4,5"
)


def pg7_standard_cap_a() -> PointSet:
    """A-side of the 35-point complete cap in PG(7,2), all pairs anchored."""
    return _pts(
        7,
        "1,2,3,6 1,3,5,6 1,4,5,6 1,2,3,5,6 1,3,4,5,6 "
        "0,6 0,2,4,6 0,3,4,6 0,2,5,6 0,2,3,4,6 0,2,4,5,6 "
        "0,1,2,6 0,1,3,6 0,1,4,6 0,1,5,6 0,1,2,3,4,5,6",
    )


def pg7_standard_cap() -> PointSet:
    """The 35-point complete cap in PG(7,2): C, the anchors, and their partners."""
    entry = pg7_plane_slice()
    a = pg7_standard_cap_a()
    b = PointSet.of(7, (entry.c0 ^ p for p in a))
    return entry.c | a | b


def seed_partition():
    """The hand-built four-class partition of AG(4,2) passing the secant-type condition."""
    from .constructions import CapPartition

    return CapPartition(
        k=4,
        r=2,
        parts={
            0: frozenset(),
            1: frozenset({0b0000, 0b0101, 0b0110, 0b1001, 0b0111, 0b1101}),
            2: frozenset({0b0011, 0b1010, 0b1100, 0b1011, 0b1110}),
            3: frozenset({0b0001, 0b0010, 0b0100, 0b1000, 0b1111}),
        },
    )


SEED_ANCHORS = (0b0000, 0b0011, 0b0001)


@dataclass(frozen=True)
class FourSliceEntry:
    """PG(4,2) frame whose C is four points spanning a solid, with z0 their sum."""

    n: int
    frame: SliceFrame
    c: PointSet
    z0: int


def pg4_four_point_slice() -> FourSliceEntry:
    n = 4
    return FourSliceEntry(
        n,
        SliceFrame(n, 0b01111, 0b10000, 0b11111),
        _pts(n, "0,4 1,4 2,4 3,4"),
        parse_point("0,1,2,3", n),
    )
