"""Tangent caps, cap families, partitions, and the four-point-slice builder."""

import pytest
from hypothesis import given, strategies as st

from pg2caps import (
    CapPartition,
    ConstructionError,
    PointSet,
    boundary_family,
    c4_construct,
    c4_planar_case,
    c4_size,
    cap_to_partition,
    completeness,
    family_cap,
    family_plan,
    family_size_by_k,
    family_size_by_s,
    general_family,
    is_periodic,
    partition_condition,
    partition_double,
    partition_to_cap,
    saturate,
    tangent_cap,
    vertex_set,
)
from pg2caps.catalog import (
    PG4_MISSED_POINT,
    PG5_PERIODIC_UNCOVERED,
    SEED_ANCHORS,
    pg4_near_halfslice,
    pg5_aperiodic_halfslice,
    pg5_periodic_halfslice,
    pg7_standard_cap,
    seed_partition,
)
from pg2caps.gf2geom import parse_point

from conftest import brute_is_complete


def test_tangent_cap_from_aperiodic_halfslice():
    entry = pg5_aperiodic_halfslice()
    cap, cert = tangent_cap(entry.a, entry.c0, entry.frame)
    assert cert.verified
    assert len(cap) == 17
    assert brute_is_complete(cap)
    assert not is_periodic(entry.a)


def test_tangent_cap_from_periodic_halfslice_is_incomplete():
    entry = pg5_periodic_halfslice()
    cap, cert = tangent_cap(entry.a, entry.c0, entry.frame)
    assert cert.verified
    rep = completeness(cap)
    assert rep.is_cap and not rep.is_complete
    missed = {parse_point(tok, entry.n) for tok in PG5_PERIODIC_UNCOVERED.split()}
    assert set(rep.uncovered) == missed
    grown, grown_cert = saturate(cap)
    assert grown_cert.verified
    assert brute_is_complete(grown)


def test_tangent_cap_near_halfslice_adds_one_point():
    entry = pg4_near_halfslice()
    cap, cert = tangent_cap(entry.a, entry.c0, entry.frame)
    assert cert.verified
    assert cert.details["branch"] == "half-aperiodic"
    e = parse_point(PG4_MISSED_POINT, entry.n)
    assert cert.details["e"] == e
    assert set(completeness(cap).uncovered) == {e}
    t = cap.add(e)
    assert brute_is_complete(t)
    assert cert.details["t_complete"]
    assert set(vertex_set(t).points) == {e ^ entry.c0}


def test_tangent_cap_rejects_points_off_the_a_slice():
    entry = pg5_aperiodic_halfslice()
    bad = entry.a.add(1)  # 1 lies on the flat at infinity
    with pytest.raises(ConstructionError):
        tangent_cap(bad, entry.c0, entry.frame)


@given(st.integers(5, 10), st.integers(1, 4))
def test_family_size_parametrizations_agree(n, r):
    if r > n - 3:
        return
    npairs = 1 << (n - r - 1)
    for s in range(npairs + 1):
        k = npairs - s + 1
        assert family_size_by_s(n, r, s) == family_size_by_k(n, r, k)


def test_family_size_values():
    assert family_size_by_s(7, 2, 16) == 35
    assert family_size_by_s(7, 2, 14) == 39
    assert family_size_by_s(7, 2, 1) == 65
    assert family_size_by_k(7, 2, 1) == 35


@pytest.mark.parametrize("s_count", [1, 4, 5, 9, 13])
def test_general_family_sizes(s_count):
    n, r = 7, 2
    cap, cert = family_cap(n, r, s_count)
    assert cert.verified
    assert len(cap) == family_size_by_s(n, r, s_count)
    assert completeness(cap).is_complete


def test_boundary_family_case():
    n, r = 7, 2
    cap, cert = family_cap(n, r, (1 << (n - r - 1)) - 2)
    assert cert.verified
    assert len(cap) == 39
    assert completeness(cap).is_complete
    assert cert.parameters["t"] == 1 and cert.parameters["u"] == 1


def test_boundary_family_needs_room():
    with pytest.raises(ConstructionError):
        boundary_family(6, 2)


def test_general_family_rejects_balanced_mixed_counts():
    from pg2caps import canonical_frame, default_family_c, pair_layout

    n, r = 7, 2
    frame = canonical_frame(n)
    c = default_family_c(n, r, frame)
    _, _, _, pairs = pair_layout(frame, c)
    anchors = [ha.min_point() for ha, _ in pairs]
    plan = ["A", "A", "B", "B"] + [("SingletonA", a) for a in anchors[4:]]
    with pytest.raises(ConstructionError, match="t = u"):
        general_family(n, r, c, plan)


def test_partition_normalization_and_identity():
    p = seed_partition()
    assert p.k == 4 and p.r == 2
    labels = p.labels()
    assert len(labels) == 16 and set(labels) == {1, 2, 3}
    assert sum(len(x) for x in p.parts.values()) == 16
    same = CapPartition(k=4, r=2, parts={w: set(xs) for w, xs in p.parts.items()})
    assert same == p and hash(same) == hash(p)


def test_partition_rejects_bad_labelings():
    with pytest.raises(ValueError):
        CapPartition(k=2, r=1, parts={0: {0, 1}, 1: {1, 2, 3}})  # overlap
    with pytest.raises(ValueError):
        CapPartition(k=2, r=1, parts={0: {0, 1}, 1: {2}})  # misses 3
    with pytest.raises(ValueError):
        CapPartition(k=2, r=1, parts={0: {0, 1}, 5: {2, 3}})  # label out of range


def test_seed_partition_passes_condition():
    report = partition_condition(seed_partition())
    assert report.ok and not report.deficiencies


def test_failing_partition_reports_deficiencies():
    bad = CapPartition(k=2, r=1, parts={0: {0, 1, 2, 3}, 1: set()})
    report = partition_condition(bad)
    assert not report.ok
    assert report.deficiencies


def test_partition_reproduces_standard_cap():
    cap = partition_to_cap(seed_partition())
    assert cap == pg7_standard_cap()
    assert completeness(cap).is_complete


def test_cap_partition_roundtrip():
    from pg2caps import canonical_frame, decompose

    p = seed_partition()
    cap = partition_to_cap(p)
    d = decompose(cap, canonical_frame(7))
    assert cap_to_partition(d) == p


def test_partition_double_chain():
    p = seed_partition()
    q = partition_double(p, *SEED_ANCHORS)
    assert q.k == 5 and q.r == 2
    assert partition_condition(q).ok
    cap = partition_to_cap(q)
    assert len(cap) == 67
    assert completeness(cap).is_complete


def test_partition_double_rejects_mislabeled_anchor():
    p = seed_partition()
    a0, a1, _ = SEED_ANCHORS
    with pytest.raises(ConstructionError, match="label"):
        partition_double(p, a0, a1, a0)


def test_c4_size_formula():
    assert c4_size(6, 0, 1) == 33
    assert c4_size(6, 3, 0) == 24
    assert c4_size(6, 1, 1) == 29
    assert c4_size(5, 0, 1) == 17


@pytest.mark.parametrize(
    "m,s,size",
    [(0, 1, 33), (3, 0, 24), (2, 1, 25), (1, 2, 26), (0, 3, 27), (2, 0, 28)],
)
def test_c4_construct_achievable(m, s, size):
    cap, cert = c4_construct(6, m, s)
    assert cert.verified
    assert len(cap) == size == c4_size(6, m, s)
    assert completeness(cap).is_complete


@pytest.mark.parametrize("m,s", [(1, 1), (0, 2)])
def test_c4_construct_absent_cases(m, s):
    with pytest.raises(ConstructionError):
        c4_construct(6, m, s)


def test_c4_construct_small_space():
    cap, cert = c4_construct(5, 0, 1)
    assert cert.verified and len(cap) == 17
    assert completeness(cap).is_complete


def test_c4_planar_verdicts():
    cap, _ = c4_construct(6, 0, 1)
    verdict = c4_planar_case(cap)
    assert not verdict.planar  # four C-points spanning a solid
    assert verdict.complete
