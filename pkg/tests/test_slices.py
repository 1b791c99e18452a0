"""Frames, slice decompositions, and the coset-pair equation machinery."""

import random

import pytest

from pg2caps import (
    FrameError,
    PointSet,
    best_disjoint_frame,
    canonical_frame,
    classify_pair,
    completeness,
    coset_equations_hold,
    decompose,
    enumerate_pair_solutions,
    find_disjoint_codim2,
    frame_for,
    global_completeness_equations,
    iter_points,
    oplus,
)
from pg2caps.catalog import (
    pg4_four_point_slice,
    pg5_aperiodic_halfslice,
    pg7_standard_cap,
)
from pg2caps.slices import pair_geometry


def test_canonical_frame_shape():
    for n in range(3, 9):
        fr = canonical_frame(n)
        assert (fr.m_a, fr.m_b) == (1 << n, 1 << (n - 1))
        assert fr.m_c == fr.m_a ^ fr.m_b
        assert fr.h_inf.dim == n - 2
        # the three hyperplanes pairwise meet exactly in the flat at infinity
        for x in ("a", "b", "c"):
            for y in ("a", "b", "c"):
                if x < y:
                    meet = fr.hyperplane(x).intersect(fr.hyperplane(y))
                    assert meet.basis == fr.h_inf.basis


def test_frame_rejects_bad_normals():
    with pytest.raises(FrameError):
        canonical_frame(3).__class__(3, 1, 2, 4)  # 1^2 != 4
    with pytest.raises(FrameError):
        canonical_frame(3).__class__(3, 1, 1, 0)


def test_frame_for_picks_smallest_c_slice():
    s = pg7_standard_cap()
    fr = frame_for(s, 1 << 7, 1 << 6)
    assert fr.m_c == (1 << 7) | (1 << 6)
    assert len(s & fr.hyperplane("c").members()) == 3
    forced = frame_for(s, 1 << 7, 1 << 6, m_c=1 << 7)
    assert forced.m_c == 1 << 7


def test_disjoint_flat_discovery():
    s = pg7_standard_cap()
    flat = find_disjoint_codim2(s)
    assert flat is not None
    assert all(p not in s for p in flat.members())
    assert find_disjoint_codim2(PointSet.full(2)) is None


def test_best_disjoint_frame_minimizes_c():
    s = pg7_standard_cap()
    fr = best_disjoint_frame(s)
    assert {fr.m_a, fr.m_b} == {1 << 7, 1 << 6}
    assert len(s & fr.hyperplane("c").members()) == 3
    assert best_disjoint_frame(PointSet.full(2)) is None


def test_standard_cap_decomposition():
    s = pg7_standard_cap()
    d = decompose(s, canonical_frame(7))
    assert (len(d.a), len(d.b), len(d.c)) == (16, 16, 3)
    assert d.r == 2
    assert (d.t, d.u, d.s, d.m) == (0, 0, 16, 0)
    assert all(d.pair_eq3)
    assert set(d.pair_tags) == {"SingletonA"}
    assert all(coset_equations_hold(d))
    eq = global_completeness_equations(d)
    assert eq.eq1 and eq.eq2


def test_decompose_requires_frame_disjoint_cap():
    fr = canonical_frame(4)
    touching = PointSet.of(4, [1, 2, 4])  # 1, 2 lie on the flat at infinity
    with pytest.raises(FrameError):
        decompose(touching, fr)


def test_equations_match_completeness_on_reference_caps():
    s = pg7_standard_cap()
    d = decompose(s, canonical_frame(7))
    eq = global_completeness_equations(d)
    assert (eq.eq1 and eq.eq2) == completeness(s).is_complete

    # dropping one A-point keeps the cap frame-disjoint but breaks the equations
    smaller = PointSet(7, s.bits) - PointSet.of(7, [max(d.a.sorted_points())])
    d2 = decompose(smaller, canonical_frame(7))
    eq2 = global_completeness_equations(d2)
    assert (eq2.eq1 and eq2.eq2) == completeness(smaller).is_complete == False


def test_pair_geometry_matches_c_span():
    entry = pg4_four_point_slice()
    ha = PointSet.of(4, [16, 16 ^ 3, 16 ^ 5, 16 ^ 6, 16 ^ 9, 16 ^ 10, 16 ^ 12, 16 ^ 15])
    got_ha, hb, w0, r = pair_geometry(ha, entry.c)
    assert r == 3
    assert got_ha == ha
    assert len(hb) == 8
    assert hb == PointSet.of(4, (entry.c.min_point() ^ p for p in ha))


def test_four_point_solution_families():
    entry = pg4_four_point_slice()
    ha = PointSet.of(4, (16 ^ v for v in [0, 3, 5, 6, 9, 10, 12, 15]))
    sols = enumerate_pair_solutions(ha, entry.c)
    assert len(sols) == 42
    by_size = {}
    for a, b in sols:
        by_size.setdefault((len(a), len(b)), []).append((a, b))
    # 2 trivial, 16 singleton (either side), 24 doubleton
    assert len(by_size[(8, 0)]) + len(by_size[(0, 8)]) == 2
    assert len(by_size[(1, 4)]) + len(by_size[(4, 1)]) == 16
    assert len(by_size[(2, 2)]) == 24
    z0 = entry.z0
    for a, b in by_size[(2, 2)]:
        a1, a2 = a.sorted_points()
        b1, b2 = b.sorted_points()
        assert a1 ^ a2 == b1 ^ b2
        assert a1 ^ a2 != z0


def test_classify_pair_names_each_family():
    s = pg7_standard_cap()
    d = decompose(s, canonical_frame(7))
    assert classify_pair(d, 0) == "SingletonA"
    with pytest.raises(IndexError):
        classify_pair(d, 99)


def test_aperiodic_halfslice_secants_fill_infinity():
    entry = pg5_aperiodic_halfslice()
    spread = oplus(entry.a, entry.a)
    assert spread == entry.frame.h_inf_points
