"""Exhaustive and structured cap searches, partition hunts, counting checks."""

import pytest

from pg2caps import (
    PointSet,
    ScaleRefusal,
    SearchConstraints,
    canonical_frame,
    completeness,
    counting_identity_check,
    enumerate_caps,
    enumerate_complete_caps,
    example31_extension,
    is_periodic,
    oplus,
    partition_condition,
    partition_search,
    spectrum,
    vertex_set,
)
from pg2caps.catalog import pg9_weight_slice, seed_partition

from conftest import brute_is_cap, brute_is_complete


def test_all_pg32_caps_counted():
    caps = list(enumerate_caps(3, complete_only=False))
    assert len(caps) == 3048
    assert all(brute_is_cap(s) for s in caps[:200])


def test_complete_caps_pg32():
    sizes = sorted({len(s) for s in enumerate_caps(3, complete_only=True)})
    assert sizes == [5, 8]
    for s in enumerate_caps(3, complete_only=True):
        assert brute_is_complete(s)


def test_shards_merge_to_full_run():
    whole = {s.bits for s in enumerate_caps(3, complete_only=True)}
    merged: set[int] = set()
    for i in range(3):
        part = {s.bits for s in enumerate_caps(3, complete_only=True, shard=(i, 3))}
        assert part.isdisjoint(merged)
        merged |= part
    assert merged == whole


def test_affine_complement_is_found():
    fr = canonical_frame(3)
    affine = fr.h_a | fr.h_b
    found = enumerate_complete_caps(SearchConstraints(3, min_size=8))
    assert any(s == affine for s in found)


def test_constraint_validation():
    with pytest.raises(ValueError):
        SearchConstraints(3, min_size=9, max_size=5)
    with pytest.raises(ValueError):
        SearchConstraints(3, c_size=-1)


def test_admits_filters():
    c = SearchConstraints(3, min_size=6, periodic=True)
    fr = canonical_frame(3)
    assert c.admits(fr.h_a | fr.h_b)
    assert not c.admits(PointSet.of(3, [1, 2, 4, 8, 15]))


def test_structured_matches_exhaustive_at_n4():
    cons = SearchConstraints(4, c_size=3, frame_disjoint=True)
    ex = {s.bits for s in enumerate_complete_caps(cons, mode="exhaustive")}
    st = {s.bits for s in enumerate_complete_caps(cons, mode="structured")}
    assert ex == st
    assert len(ex) == 896
    assert {len(PointSet(4, b)) for b in ex} == {9}


def test_large_cap_spectrum_n4():
    sp = spectrum(SearchConstraints(4, large=True))
    assert sp.sizes == (9, 10, 16)
    for size, witness in sp.witnesses.items():
        assert len(witness) == size
        assert brute_is_complete(witness)


def test_exhaustive_refuses_big_spaces():
    with pytest.raises(ScaleRefusal):
        list(enumerate_complete_caps(SearchConstraints(6)))


def test_structured_needs_c_size():
    with pytest.raises(ValueError):
        list(enumerate_complete_caps(SearchConstraints(4), mode="structured"))


def test_partition_search_small_cases():
    # four vectors over two labels: coverable
    found = partition_search(2, 1, mode="exhaustive")
    assert found is not None
    assert partition_condition(found).ok
    # sixteen vectors over eight labels at the critical ratio: impossible
    assert partition_search(3, 2, mode="exhaustive") is None


def test_partition_search_finds_seed_shape():
    found = partition_search(4, 2, mode="exhaustive")
    assert found is not None
    assert partition_condition(found).ok


def test_partition_search_randomized():
    found = partition_search(4, 2, mode="randomized", seed=7)
    assert found is not None
    assert partition_condition(found).ok


def test_partition_search_refuses_big_label_spaces():
    with pytest.raises(ScaleRefusal):
        partition_search(5, 2, mode="exhaustive")


def test_counting_identity_critical_case():
    chk = counting_identity_check(3, 2)
    assert chk.r_critical
    assert chk.identity_holds is False
    assert chk.refutes and not bool(chk)


def test_counting_identity_subcritical_with_candidate():
    chk = counting_identity_check(4, 2, seed_partition())
    assert not chk.r_critical
    assert chk.candidate_counts == {0: 35, 1: 25, 2: 30, 3: 30}
    assert chk.candidate_counts_ok
    assert not chk.refutes and bool(chk)


def test_weight_slice_extension():
    entry = pg9_weight_slice()
    assert len(entry.a_sharp) == 66
    a = example31_extension(entry.a_sharp, entry.v)
    assert len(a) == 1 << (entry.n - 2)
    assert is_periodic(a) and entry.v in vertex_set(a).points
    assert oplus(a, a) == canonical_frame(entry.n).h_inf_points
