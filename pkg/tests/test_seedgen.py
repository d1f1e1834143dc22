import itertools
import random

import pytest
from oracles import brute_force_classes

from onefact.autotypes import admissible_types
from onefact.extender import _anchor_sets
from onefact.gdd import Factorization, compose, group_elements, inverse, perm_power, prime_subgroups
from onefact.seedgen import (Seed, apply_to_seed, classify_seeds, fix_group_representative, normalizer_order,
                             seed_form, seed_from_factorization, seed_m_value, seed_violations)


def types_of(n):
    return {t.triple: t for t in admissible_types(n)}


@pytest.fixture(scope="module")
def seeds8():
    return {t.triple: classify_seeds(t, 8) for t in admissible_types(8)}


def cycles(g, pts):
    out, seen = [], set()
    for x in pts:
        if x in seen:
            continue
        c = [x]
        seen.add(x)
        while g[c[-1]] != x:
            c.append(g[c[-1]])
            seen.add(c[-1])
        out.append(c)
    return out


def test_representative_13_0_1():
    g = fix_group_representative(types_of(14)[(13, 0, 1)], 14).generator
    assert cycles(g, range(13)) == [list(range(13))]
    v = cycles(g, range(13, 27))
    assert v[0] == [13] and v[1] == list(range(14, 27))


def test_representative_2_7_0():
    g = fix_group_representative(types_of(14)[(2, 7, 0)], 14).generator
    assert [len(c) for c in cycles(g, range(13))] == [1] * 7 + [2] * 3
    assert [len(c) for c in cycles(g, range(13, 27))] == [2] * 7
    assert cycles(g, range(13))[7] == [7, 8]


def test_representative_3_1_2():
    g = fix_group_representative(types_of(14)[(3, 1, 2)], 14).generator
    assert [len(c) for c in cycles(g, range(13))] == [1] + [3] * 4
    assert [len(c) for c in cycles(g, range(13, 27))] == [1, 1] + [3] * 4


def test_normalizer_order():
    grp = fix_group_representative(types_of(14)[(13, 0, 1)], 14)
    assert normalizer_order(grp) == 13 * 13 * 12
    grp = fix_group_representative(types_of(8)[(2, 1, 0)], 8)
    # U: 1 fixed + 3 transpositions, V: 4 transpositions
    assert normalizer_order(grp) == (1 * 6 * 2 ** 3) * (24 * 2 ** 4)


def test_m_values():
    t = types_of(14)
    assert seed_m_value(t[(5, 3, 4)], 14) == 6
    assert seed_m_value(t[(2, 7, 0)], 14) == 98
    assert seed_m_value(t[(3, 1, 2)], 14) == 1


@pytest.mark.parametrize("triple,count", [((3, 1, 2), 65), ((5, 3, 4), 8), ((13, 0, 1), 14)])
def test_fast_n14_counts(triple, count):
    assert len(classify_seeds(types_of(14)[triple], 14)) == count


def test_seeds_pass_checker(seeds8):
    t8 = types_of(8)
    for triple, classes in seeds8.items():
        for sc in classes:
            assert seed_violations(sc.representative, t8[triple]) == []


def test_checker_flags_broken_seeds(seeds8):
    sc = seeds8[(2, 3, 0)][0]
    s = sc.representative
    g = s.group.generator
    moved = next(b for b in s.blocks if tuple(sorted(g[x] for x in b)) != b)
    fewer = tuple(b for b in s.blocks if b != moved)
    assert "closure" in seed_violations(Seed(s.group, s.anchor, fewer))
    assert {"d'", "e'"} & set(seed_violations(Seed(s.group, s.anchor, fewer)))
    extra = Seed(s.group, s.anchor, s.blocks + s.blocks[:1])
    assert "a'" in seed_violations(extra) or "b'" in seed_violations(extra)


def test_aut_order_divides_normalizer(seeds8):
    for classes in seeds8.values():
        for sc in classes:
            assert normalizer_order(sc.representative.group) % sc.aut_order == 0


def test_aut_generators_are_seed_automorphisms(seeds8):
    for classes in seeds8.values():
        for sc in classes:
            s = sc.representative
            pows = {perm_power(s.group.generator, j) for j in range(1, s.group.p)}
            for gamma in sc.aut_generators:
                img = apply_to_seed(gamma, s)
                assert img.anchor == s.anchor and img.blocks == s.blocks
                assert img.group.generator in pows
            assert len(group_elements(sc.aut_generators, 15)) == sc.aut_order


def test_aut_order_bruteforce_n6():
    """|Aut(seed)| by scanning Sym(U) x Sym(V) for maps normalizing the group."""
    for t in admissible_types(6):
        for sc in classify_seeds(t, 6):
            s = sc.representative
            g = s.group.generator
            pows = {perm_power(g, j) for j in range(1, s.group.p)}
            count = 0
            for pu in itertools.permutations(range(5)):
                for pv in itertools.permutations(range(5, 11)):
                    gamma = pu + pv
                    if compose(gamma, compose(g, inverse(gamma))) not in pows:
                        continue
                    img = apply_to_seed(gamma, s)
                    if img.anchor == s.anchor and img.blocks == s.blocks:
                        count += 1
            assert count == sc.aut_order, (t, s)


def test_classes_pairwise_non_isomorphic(seeds8):
    rng = random.Random(3)
    t8 = types_of(8)
    for triple, classes in seeds8.items():
        forms = set()
        for sc in classes:
            pu, pv = list(range(7)), list(range(7, 15))
            rng.shuffle(pu)
            rng.shuffle(pv)
            moved = apply_to_seed(tuple(pu + pv), sc.representative)
            f, aut = seed_form(moved, t8[triple])
            assert f == sc.form and aut == sc.aut_order
            forms.add(f)
        assert len(forms) == len(classes)


def test_serialization_round_trip(seeds8):
    for classes in seeds8.values():
        for sc in classes:
            s = sc.representative
            assert Seed.deserialize(8, s.serialize()) == s


@pytest.mark.parametrize("n", [6, 8])
def test_every_contained_seed_is_classified(n):
    tt = types_of(n)
    forms = {tr: {sc.form for sc in classify_seeds(t, n)} for tr, t in tt.items()}
    for blob, aut in brute_force_classes(n).items():
        if aut == 1:
            continue
        x = Factorization.deserialize(n, blob)
        for grp in prime_subgroups(x):
            t = tt[grp.type]
            for T in _anchor_sets(x, grp, t.anchor_schema):
                s = seed_from_factorization(x.blocks, grp, T)
                assert seed_violations(s, t) == []
                assert seed_form(s, t)[0] in forms[grp.type]
