"""Cap predicates, completeness, vertices, and the doubling operators."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from pg2caps import (
    PointSet,
    completeness,
    is_cap,
    is_periodic,
    iter_points,
    num_points,
    oplus,
    periodic_section_vertex_check,
    plotkin_double,
    secants,
    span,
    undouble,
    vertex_set,
)
from pg2caps.gf2geom import orthogonal_hyperplane

from conftest import (
    brute_is_cap,
    brute_is_complete,
    brute_uncovered,
    brute_vertices,
    rand_cap,
    rand_subset,
)


@st.composite
def subsets(draw, lo=2, hi=5):
    n = draw(st.integers(lo, hi))
    rng = random.Random(draw(st.integers(0, 2**32)))
    return rand_subset(n, rng, k=rng.randint(0, min(20, num_points(n))))


@st.composite
def caps(draw, lo=3, hi=5, maximal=False):
    n = draw(st.integers(lo, hi))
    rng = random.Random(draw(st.integers(0, 2**32)))
    return rand_cap(n, rng, maximal=maximal)


@given(subsets())
def test_is_cap_matches_oracle(s):
    assert is_cap(s) == brute_is_cap(s)


@given(subsets())
def test_secants_and_oplus(s):
    pts = s.sorted_points()
    pairs = {x ^ y for x in pts for y in pts if x != y}
    assert set(secants(s)) == pairs
    assert oplus(s, s) == secants(s)


@given(subsets(), subsets())
def test_oplus_definition(x, y):
    if x.n != y.n:
        with pytest.raises(ValueError):
            oplus(x, y)
        return
    want = {a ^ b for a in x for b in y if a != b}
    assert set(oplus(x, y)) == want


@given(subsets())
def test_completeness_matches_oracle(s):
    rep = completeness(s)
    assert rep.is_cap == brute_is_cap(s)
    assert set(rep.uncovered) == brute_uncovered(s)
    assert rep.is_complete == brute_is_complete(s)


@given(caps(maximal=True))
def test_greedy_maximal_caps_are_complete(s):
    rep = completeness(s)
    assert rep.is_cap and rep.is_complete


@given(subsets())
def test_vertex_set_matches_oracle(s):
    vs = vertex_set(s)
    if not s:
        assert vs.degenerate
        return
    assert set(vs.points) == brute_vertices(s)
    assert is_periodic(s) == bool(brute_vertices(s))


@given(subsets())
def test_vertices_with_zero_form_a_group(s):
    if not s:
        return
    vs = set(vertex_set(s).points)
    for a in vs:
        for b in vs:
            if a != b:
                assert a ^ b in vs
    if vs:
        assert len(vs) + 1 == 1 << span(vertex_set(s).points).dim + 1


@given(subsets())
def test_periodic_sets_have_even_size(s):
    if is_periodic(s):
        assert len(s) % 2 == 0


@given(caps())
def test_plotkin_double_roundtrip(s):
    outside = next((v for v in iter_points(s.n) if v not in span(s)), None)
    if outside is None:
        return
    d = plotkin_double(s, outside)
    assert len(d) == 2 * len(s)
    assert outside in vertex_set(d).points
    half = undouble(d, outside)
    assert len(half) == len(s)
    assert plotkin_double(half, outside) == d


@given(caps())
def test_plotkin_double_preserves_cap(s):
    outside = next((v for v in iter_points(s.n) if v not in span(s)), None)
    if outside is None:
        return
    d = plotkin_double(s, outside)
    assert is_cap(d) == is_cap(s)


def test_double_rejects_inside_direction():
    s = PointSet.of(3, [1, 2, 4])
    with pytest.raises(ValueError):
        plotkin_double(s, 7)  # 7 = 1+2+4 lies in the span


def test_undouble_needs_a_vertex():
    s = PointSet.of(3, [1, 2, 4, 8])
    with pytest.raises(ValueError):
        undouble(s, 3)


@given(caps(maximal=True))
def test_hyperplane_section_vertices_carry_over(s):
    cap_vs = set(vertex_set(s).points)
    for m in list(iter_points(s.n))[:7]:
        h = orthogonal_hyperplane(m, s.n)
        vs = periodic_section_vertex_check(s, h)
        if vs.degenerate:
            continue  # empty section: every point fixes it, nothing to inherit
        for v in vs.points:
            assert v in cap_vs


def test_completeness_within_flat():
    h = orthogonal_hyperplane(1 << 3, 3)
    s = PointSet.of(3, [1, 2, 4, 7])
    rep = completeness(s, within=h)
    assert rep.is_cap and rep.is_complete
    assert not completeness(s).is_complete
    with pytest.raises(ValueError):
        completeness(PointSet.of(3, [8]), within=h)
