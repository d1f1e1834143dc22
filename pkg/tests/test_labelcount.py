import math

import pytest

from onefact.canon import canonical_form_dense
from onefact.graphcore import DenseGraph, count_labeled_factorizations_bruteforce, form_to_rows
from onefact.labelcount import (
    DivisibilityError, LevelStore, base_level, build_levels, distinct_factorization_table,
    forward_accumulate_level, labeled_graph_count, verify_dgm_level, verify_mitm,
)
from onefact.regular import classes_of, is_one_factorizable, labeled_regular_graphs

LF_KN = {2: 1, 4: 1, 6: 6, 8: 6240, 10: 1225566720}


@pytest.fixture(scope="module")
def levels8():
    return build_levels(8)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_lf_complete_graph(n):
    assert build_levels(n)[-1].acc == [LF_KN[n]]


def test_lf_values_match_bruteforce(levels8):
    for lv in levels8:
        for rec in lv:
            g = DenseGraph.from_rows(form_to_rows(8, rec.canonical_form))
            assert rec.accumulator == count_labeled_factorizations_bruteforce(g)


def test_kn_bruteforce_oracle():
    assert count_labeled_factorizations_bruteforce(DenseGraph.complete(8)) == 6240


def test_divisibility_before_finalize():
    lv = base_level(8)
    for k in range(1, 8):
        st = forward_accumulate_level(lv)
        assert st.state == "complete"
        assert all(a % k == 0 for a in st.acc)
        st.finalize()
        lv = st


def test_levels_match_direct_generation():
    n = 8
    levels = build_levels(n)
    for k in range(n):
        graphs = list(labeled_regular_graphs(n, k))
        fact = [g for g in graphs if is_one_factorizable(n, g)]
        assert labeled_graph_count(levels[k]) == len(fact)
        assert set(levels[k].forms) == set(classes_of(n, fact))


@pytest.mark.parametrize("n", [6, 8, 10])
def test_dgm_all_levels(n):
    levels = build_levels(n)
    assert all(verify_dgm_level(levels[k], levels[k - 1]) for k in range(1, n))


def test_dgm_detects_corruption(levels8):
    lv = levels8[4]
    bad = LevelStore.from_records(8, 4, [(r.canonical_form, r.accumulator, r.aut_order) for r in lv])
    bad.acc[0] += 1
    assert not verify_dgm_level(bad, levels8[3])
    assert verify_dgm_level(lv, levels8[3])


@pytest.mark.parametrize("n", [6, 8, 10])
def test_mitm_same_for_every_k(n):
    levels = build_levels(n)
    vals = [verify_mitm(n, k, levels) for k in range(n)]
    assert vals == [LF_KN[n]] * n


def test_mitm_degenerate_k0(levels8):
    assert verify_mitm(8, 0, levels8) == 6240


def test_table_rows(levels8):
    t = distinct_factorization_table(8, levels8)
    assert t[0] == 1
    assert t[1] == 105
    assert t[7] == 6240
    # k=6: the complement of one perfect matching, 105 labeled copies
    assert t[6] == 105 * levels8[6].acc[0]


def test_store_probing_and_growth():
    st = LevelStore(14, 3, capacity=1)
    forms = [i.to_bytes(16, "little") for i in range(5000)]
    for i, f in enumerate(forms):
        st.add(f, i, 1)
    for i, f in enumerate(forms):
        st.add(f, 1, 1)
    assert len(st) == 5000
    assert all(st.get(f).accumulator == i + 1 for i, f in enumerate(forms))
    assert st.get((10**9).to_bytes(16, "little")) is None


def test_finalize_rejects_indivisible():
    st = LevelStore.from_records(6, 3, [(bytes(16), 7, 1)], state="complete")
    with pytest.raises(DivisibilityError):
        st.finalize()


def test_complete_rejects_bad_weight():
    st = LevelStore(6, 2)
    st.add(bytes(16), 1, 1)
    with pytest.raises(DivisibilityError):
        st.complete()


def test_parallel_matches_serial():
    a = build_levels(10)
    b = build_levels(10, threads=2)
    for x, y in zip(a, b):
        assert dict(zip(x.forms, x.acc)) == dict(zip(y.forms, y.acc))


def test_form_lookup_uses_canonical_form(levels8):
    k7 = canonical_form_dense(DenseGraph.complete(8))
    assert levels8[7].lf(k7) == 6240
    assert math.factorial(8) // levels8[7].aut[0] == 1
