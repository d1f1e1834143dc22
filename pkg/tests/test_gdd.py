import random

import pytest

from onefact.gdd import (Factorization, InvalidFactorization, PointSpace, canonical_factorization, compose,
                         from_graphical, group_elements, incidence_graph, inverse, perm_order, perm_power,
                         prime_subgroups, to_colored_graph)
from onefact.graphcore import OneFactor


def patterned(n):
    """Round-robin factorization: vertex n-1 is infinity, factor i pairs (i, inf) and (i-j, i+j) mod n-1."""
    m = n - 1
    factors = []
    for i in range(m):
        pairs = [(i, m)] + [((i - j) % m, (i + j) % m) for j in range(1, n // 2)]
        factors.append(OneFactor(n, tuple(pairs)))
    return from_graphical(factors)


def random_relabel(x, rng):
    n = x.n
    pu = list(range(n - 1))
    pv = list(range(n - 1, 2 * n - 1))
    rng.shuffle(pu)
    rng.shuffle(pv)
    return x.relabel(pu + pv)


def test_point_space():
    sp = PointSpace(14)
    assert sp.num_points == 27
    assert list(sp.U) == list(range(13))
    assert list(sp.V) == list(range(13, 27))
    assert sp.vertex(0) == 13 and sp.vertex(13) == 26
    with pytest.raises(ValueError):
        PointSpace(7)


def test_k4_blocks_and_incidence_graph():
    fs = [OneFactor(4, ((0, 1), (2, 3))), OneFactor(4, ((0, 2), (1, 3))), OneFactor(4, ((0, 3), (1, 2)))]
    x = from_graphical(fs)
    assert len(x.blocks) == 6
    assert x.is_valid()
    m, edges, colors = incidence_graph(4, x.blocks)
    assert m == 7 + 6 and len(edges) == 18
    assert to_colored_graph(x).m == 13
    assert x.to_factors() == fs


def test_serialize_round_trip():
    x = patterned(8)
    assert Factorization.deserialize(8, x.serialize()) == x
    assert len(x.serialize()) == 3 * 28


def test_overlap_rejected():
    f = OneFactor(4, ((0, 1), (2, 3)))
    g = OneFactor(4, ((0, 2), (1, 3)))
    with pytest.raises(InvalidFactorization):
        from_graphical([f, g, f])
    with pytest.raises(InvalidFactorization):
        from_graphical([f, g])


def test_validate_catches_each_condition():
    x = patterned(6)
    assert x.is_valid()
    assert not Factorization(6, x.blocks[1:]).is_valid()
    b = list(x.blocks)
    b[0] = (0, 1, 7)  # two U points
    assert not Factorization(6, tuple(b)).is_valid()
    b = list(x.blocks)
    u, v, w = b[0]
    i = next(i for i, c in enumerate(b) if c[0] != u)
    b[i] = (b[i][0], v, w)  # edge {v, w} now in two factors
    with pytest.raises(InvalidFactorization, match="twice"):
        Factorization(6, tuple(b)).validate()


def test_canonical_form_invariant_under_relabeling():
    rng = random.Random(7)
    for n in (6, 8, 10):
        x = patterned(n)
        ref = canonical_factorization(x)
        for _ in range(20):
            y = random_relabel(x, rng)
            cy = canonical_factorization(y)
            assert cy.blocks == ref.blocks
            assert cy.aut_order == ref.aut_order
            assert y.relabel(cy.labeling).blocks == cy.blocks


def test_generators_are_automorphisms():
    x = patterned(8)
    c = canonical_factorization(x)
    for g in c.generators:
        assert x.relabel(g).blocks == x.blocks
    assert c.aut_order == len(group_elements(c.generators, 15))


def test_patterned_k8_group():
    # x -> a x + b on Z_7, fixing infinity, maps the patterned factorization to itself
    x = patterned(8)
    assert canonical_factorization(x).aut_order == 42
    subs = prime_subgroups(x)
    orders = {}
    for s in subs:
        orders[s.p] = orders.get(s.p, 0) + 1
    assert orders == {2: 7, 3: 7, 7: 1}
    translation = next(s for s in subs if s.p == 7)
    assert translation.type == (7, 0, 1)


def test_unique_k6_class():
    assert canonical_factorization(patterned(6)).aut_order == 120


def test_permutation_helpers():
    a = (1, 2, 0, 3)
    b = (0, 1, 3, 2)
    assert compose(a, b) == (1, 2, 3, 0)
    assert compose(a, inverse(a)) == (0, 1, 2, 3)
    assert perm_order(compose(a, b)) == 4
    assert perm_power(a, 3) == (0, 1, 2, 3)
    assert len(group_elements([a, b], 4)) == 24
