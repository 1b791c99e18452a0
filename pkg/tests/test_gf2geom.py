"""Point arithmetic, parsing, and subspace machinery."""

import pytest
from hypothesis import given, strategies as st

from pg2caps import (
    PointParseError,
    PointSet,
    cosets_of,
    format_point,
    is_collinear,
    iter_points,
    num_points,
    parse_point,
    point_add,
    quotient_map,
    span,
)
from pg2caps.gf2geom import (
    coordinates_in,
    embed,
    orthogonal_hyperplane,
    restrict,
    unrestrict,
)

from conftest import brute_rank

dims = st.integers(2, 8)


@st.composite
def dim_and_point(draw):
    n = draw(dims)
    return n, draw(st.integers(1, num_points(n)))


@st.composite
def dim_and_points(draw, count):
    n = draw(dims)
    pts = draw(st.lists(st.integers(1, num_points(n)), min_size=count, max_size=count))
    return (n, *pts)


@given(dims)
def test_point_count(n):
    assert num_points(n) == 2 ** (n + 1) - 1
    assert len(list(iter_points(n))) == num_points(n)
    assert 0 not in iter_points(n)


@given(dim_and_point(), st.sampled_from(["idx", "hex"]))
def test_parse_format_roundtrip(np, style):
    n, p = np
    assert parse_point(format_point(p, n, style), n) == p


def test_point_tokens():
    assert parse_point("0", 3) == 1
    assert parse_point("0,2", 3) == 0b101
    assert parse_point("0x0012", 9) == 0x12
    assert format_point(0b101, 3) == "0,2"
    assert format_point(0x12, 9, "hex") == "0x0012"


@pytest.mark.parametrize("bad", ["", "a", "10", "1,1", "0x10000", "-1"])
def test_parse_rejects(bad):
    with pytest.raises(PointParseError):
        parse_point(bad, 3)


@given(dim_and_points(2))
def test_point_add_is_xor(npq):
    n, p, q = npq
    if p == q:
        with pytest.raises(ValueError):
            point_add(p, q)
    else:
        assert point_add(p, q) == p ^ q


@given(dim_and_points(3))
def test_collinear_iff_xor(npqz):
    n, p, q, z = npqz
    if len({p, q, z}) < 3:
        with pytest.raises(ValueError):
            is_collinear(p, q, z)
    else:
        assert is_collinear(p, q, z) == (z == p ^ q)
        assert is_collinear(p, q, z) == is_collinear(z, q, p)


@given(dim_and_points(4))
def test_span_closure_and_rank(data):
    n, *pts = data
    sp = span(pts, n)
    assert sp.dim == brute_rank(pts) - 1
    members = list(sp.members())
    assert all(p in sp for p in pts)
    for a in members:
        for b in members:
            assert a == b or (a ^ b) in sp


@given(dim_and_points(3))
def test_subspace_coordinates_roundtrip(data):
    n, *pts = data
    sp = span(pts, n)
    for v in sp.members():
        assert sp.from_coordinates(sp.coordinates(v)) == v
    outside = next((p for p in iter_points(n) if p not in sp), None)
    if outside is not None:
        with pytest.raises(ValueError):
            sp.coordinates(outside)


@given(dim_and_point())
def test_orthogonal_hyperplane(np):
    n, m = np
    h = orthogonal_hyperplane(m, n)
    assert h.dim == n - 1
    inside = {p for p in iter_points(n) if p in h}
    assert inside == {p for p in iter_points(n) if bin(p & m).count("1") % 2 == 0}


def test_intersect():
    a = span([0b001, 0b010], 2)
    b = span([0b010, 0b100], 2)
    assert a.intersect(b).basis == (0b010,)
    assert a.intersect(span([0b100], 2)).basis == ()


@given(st.integers(2, 6), st.randoms(use_true_random=False))
def test_cosets_partition(n, rng):
    flat = span([1, 2], n)
    outside = [p for p in iter_points(n) if p not in flat]
    reps = rng.sample(outside, 3)
    within = PointSet.of(n, (r ^ v for r in reps for v in flat.vectors()))
    cs = cosets_of(flat, within)
    assert sum(len(c.members()) for c in cs) == len(within)
    union = PointSet.empty(n)
    for c in cs:
        mem = c.members()
        assert len(mem) == 4
        assert mem.isdisjoint(union)
        union = union | mem
    assert union == within


def test_cosets_rejects_partial_union():
    flat = span([1, 2], 3)
    ragged = PointSet.of(3, [4, 5, 6])  # misses 7 from the coset 4+flat
    with pytest.raises(ValueError):
        cosets_of(flat, ragged)


@given(st.integers(2, 6))
def test_quotient_map_kernel(n):
    flat = span([1, 2], n)
    q = quotient_map(flat)
    assert q.image_dim == n - 2
    for p in iter_points(n):
        assert (q(p) == 0) == (p in flat)
        for v in flat.members():
            if p ^ v:
                assert q(p) == q(p ^ v)


@given(st.integers(2, 5), st.integers(0, 3))
def test_embed_restrict_roundtrip(n, extra):
    s = PointSet.of(n, [1, 2, 1 << n])
    big = embed(s, n + extra)
    assert big.sorted_points() == s.sorted_points()
    flat = span(list(iter_points(n)), n)
    coords = restrict(s, flat)
    assert unrestrict(coords, flat) == s


def test_coordinates_in():
    basis = [0b011, 0b100]
    assert coordinates_in(0b111, basis) == 0b11
    assert coordinates_in(0b011, basis) == 0b01
    assert coordinates_in(0b001, basis) is None
    with pytest.raises(ValueError):
        coordinates_in(0b1, [0b11, 0b11])
