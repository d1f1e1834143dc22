import pytest
from oracles import brute_force_classes

from onefact.autotypes import admissible_types
from onefact.census import double_count_check
from onefact.extender import (Acceptor, CoverInstance, build_cover_instance, classify_symmetric, extend_seed,
                              solve_cover, split_units)
from onefact.gdd import group_elements, normalize_block
from onefact.seedgen import Seed, classify_seeds


@pytest.fixture(scope="module")
def run8():
    return classify_symmetric(8, validate=True)


def toy(items, option_items):
    dummy = Seed(None, (), ())
    return CoverInstance(dummy, items, [() for _ in option_items], option_items)


def test_two_singleton_options():
    assert solve_cover(toy([(0, 1)], [(0,), (0,)])) == 2


def test_uncoverable_item():
    assert solve_cover(toy([(0, 1), (0, 2)], [(0,)])) == 0


def test_empty_instance_has_one_solution():
    assert solve_cover(toy([], [])) == 1


def test_exact_cover_textbook():
    # Knuth's seven-item example; options 0, 3 and 4 form the only exact cover
    opts = [(2, 4, 5), (0, 3, 6), (1, 2, 5), (0, 3), (1, 6), (3, 4, 6)]
    assert solve_cover(toy(list(range(7)), [tuple(sorted(o)) for o in opts])) == 1


def test_item_count_identity():
    for t in admissible_types(8):
        for sc in classify_seeds(t, 8):
            inst = build_cover_instance(sc.representative)
            assert len(inst.items) == 3 * (28 - len(sc.representative.blocks))
            assert len(inst.items) % 3 == 0


def test_solutions_valid_and_invariant():
    for t in admissible_types(8):
        for sc in classify_seeds(t, 8):
            g = sc.representative.group.generator
            seen = []

            def check(x):
                x.validate()
                assert set(sc.representative.blocks) <= set(x.blocks)
                assert tuple(sorted(normalize_block(g[a] for a in b) for b in x.blocks)) == x.blocks
                seen.append(x.blocks)

            n = solve_cover(build_cover_instance(sc.representative), check)
            assert n == len(seen) == len(set(seen))


def test_split_units_partition_the_search():
    sc = min(classify_seeds(admissible_types(8)[4], 8), key=lambda c: len(c.representative.blocks))
    inst = build_cover_instance(sc.representative)
    total = solve_cover(inst)
    for depth in (1, 2):
        units = split_units(inst, depth)
        assert sum(solve_cover(inst, prefix=u) for u in units) == total


@pytest.mark.parametrize("n", [6, 8])
def test_matches_brute_force(n):
    bf = {f: a for f, a in brute_force_classes(n).items() if a > 1}
    res = classify_symmetric(n)
    forms = [a.form for a in res.accepted()]
    assert len(forms) == len(set(forms))
    assert set(forms) == set(bf)
    for a in res.accepted():
        assert a.aut_order == bf[a.form]


def test_k6_accepted_once():
    res = classify_symmetric(6)
    assert [a.aut_order for a in res.accepted()] == [120]


def test_k8_tallies(run8):
    assert run8.tallies() == {16: 1, 24: 1, 42: 1, 64: 1, 96: 1, 1344: 1}


def test_reverse_order_same_acceptance(run8):
    rev = classify_symmetric(8, reverse=True)
    assert sorted(a.form for a in rev.accepted()) == sorted(a.form for a in run8.accepted())
    for t in run8.outcomes:
        assert [o.ext_count for o in rev.outcomes[t]] == [o.ext_count for o in run8.outcomes[t]]


def test_at_most_one_accepted_per_seed_orbit(run8):
    # each accepted X is least among its images under Aut(seed); images are never accepted
    acc = Acceptor(8)
    for t in admissible_types(8):
        for sc in run8.seeds[t.triple]:
            sols = []
            solve_cover(build_cover_instance(sc.representative), sols.append)
            keep = {x.blocks for x in sols if acc.accept(x, sc)}
            elems = group_elements(sc.aut_generators, 15)
            for x in sols:
                orbit = {x.relabel(g).blocks for g in elems}
                assert len(orbit & keep) <= 1


def test_double_count_n8(run8):
    for t in admissible_types(8):
        seed_data = [(sc.aut_order, o.ext_count) for sc, o in zip(run8.seeds[t.triple], run8.outcomes[t.triple])]
        class_data = [(a.aut_order, a.subgroup_types.get(t.triple, 0)) for a in run8.accepted()]
        lhs, rhs, ok = double_count_check(t, 8, seed_data, class_data)
        assert ok, (t, lhs, rhs)


def test_extend_seed_with_prefixes_matches_whole():
    t = admissible_types(8)[2]
    acc = Acceptor(8)
    for i, sc in enumerate(classify_seeds(t, 8)):
        whole = extend_seed(sc, i, acc)
        units = split_units(build_cover_instance(sc.representative), 1)
        parts = extend_seed(sc, i, acc, prefixes=units)
        assert parts.ext_count == whole.ext_count
        assert sorted(a.form for a in parts.accepted) == sorted(a.form for a in whole.accepted)
