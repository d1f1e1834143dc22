import math
import random
from itertools import permutations

import networkx as nx
import pytest

from conftest import permute_rows, random_rows
from onefact import _backend, _pycore
from onefact.canon import ColoredGraph, aut_order_graph, canonical_form_dense, canonicalize, serialize_form
from onefact.graphcore import DenseGraph


def count_automorphisms(rows, colors=None):
    """Backtracking count of adjacency- and colour-preserving bijections."""
    m = len(rows)
    colors = colors or [0] * m
    img = [-1] * m
    used = [False] * m

    def rec(v):
        if v == m:
            return 1
        total = 0
        for w in range(m):
            if used[w] or colors[w] != colors[v]:
                continue
            ok = True
            for u in range(v):
                if (rows[v] >> u & 1) != (rows[w] >> img[u] & 1):
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                total += rec(v + 1)
                used[w] = False
        return total

    return rec(0)


def nx_rows(g):
    m = g.number_of_nodes()
    idx = {v: i for i, v in enumerate(g.nodes())}
    rows = [0] * m
    for a, b in g.edges():
        rows[idx[a]] |= 1 << idx[b]
        rows[idx[b]] |= 1 << idx[a]
    return rows


def upper_bits(rows):
    m = len(rows)
    c = 0
    b = 0
    for i in range(m):
        for j in range(i + 1, m):
            if rows[i] >> j & 1:
                c |= 1 << b
            b += 1
    return c


ATLAS = [g for g in nx.graph_atlas_g() if g.number_of_nodes() >= 1]


def test_atlas_aut_orders_and_distinct_forms():
    forms = set()
    for g in ATLAS:
        rows = nx_rows(g)
        res = canonicalize(ColoredGraph(len(rows), rows))
        assert res.aut_order == count_automorphisms(rows)
        forms.add((len(rows), res.canonical_form))
    assert len(forms) == len(ATLAS)


def test_orbit_stabilizer_explicit():
    rng = random.Random(3)
    sample = [g for g in ATLAS if g.number_of_nodes() <= 5]
    sample += rng.sample([g for g in ATLAS if g.number_of_nodes() == 7], 25)
    for g in sample:
        rows = nx_rows(g)
        m = len(rows)
        seen = {upper_bits(permute_rows(rows, p)) for p in permutations(range(m))}
        aut = canonicalize(ColoredGraph(m, rows)).aut_order
        assert len(seen) * aut == math.factorial(m)


@pytest.mark.parametrize("m", range(1, 15))
def test_relabel_invariance(m):
    rng = random.Random(100 + m)
    for _ in range(1000):
        rows = random_rows(rng, m, rng.random())
        perm = list(range(m))
        rng.shuffle(perm)
        a = canonicalize(ColoredGraph(m, rows))
        b = canonicalize(ColoredGraph(m, permute_rows(rows, perm)))
        assert a.canonical_form == b.canonical_form
        assert a.aut_order == b.aut_order


def test_labeling_reproduces_form_and_generators_are_automorphisms():
    rng = random.Random(11)
    for _ in range(200):
        m = rng.randint(2, 20)
        rows = random_rows(rng, m, rng.random())
        colors = [rng.randrange(2) for _ in range(m)]
        colors = [c - min(colors) for c in colors]
        g = ColoredGraph(m, rows, colors)
        res = canonicalize(g)
        h = g.relabel(res.canonical_labeling)
        counts = [colors.count(c) for c in range(g.num_colors())]
        assert serialize_form(m, counts, upper_bits(list(h.adjacency))) == res.canonical_form
        assert list(h.colors) == sorted(colors)
        for gen in res.aut_generators:
            assert g.is_automorphism(gen)
        assert math.factorial(m) % res.aut_order == 0


def test_colored_relabel_invariance():
    rng = random.Random(12)
    for _ in range(300):
        m = rng.randint(1, 40)
        rows = random_rows(rng, m, rng.random() * 0.5)
        k = rng.randint(1, 3)
        colors = [rng.randrange(k) for _ in range(m)]
        present = sorted(set(colors))
        colors = [present.index(c) for c in colors]
        perm = list(range(m))
        rng.shuffle(perm)
        g = ColoredGraph(m, rows, colors)
        a = canonicalize(g)
        b = canonicalize(g.relabel(perm))
        assert a.canonical_form == b.canonical_form
        assert a.aut_order == b.aut_order


def test_colored_small_against_bruteforce():
    rng = random.Random(13)
    for _ in range(300):
        m = rng.randint(1, 7)
        rows = random_rows(rng, m, rng.random())
        colors = [rng.randrange(2) for _ in range(m)]
        present = sorted(set(colors))
        colors = [present.index(c) for c in colors]
        res = canonicalize(ColoredGraph(m, rows, colors))
        assert res.aut_order == count_automorphisms(rows, colors)


def test_distinct_colors_trivial_group():
    g = ColoredGraph.from_dense(DenseGraph.complete(10))
    g = ColoredGraph(10, g.adjacency, list(range(10)))
    assert canonicalize(g).aut_order == 1


def test_known_orders():
    assert aut_order_graph(DenseGraph.complete(14)) == 87178291200
    assert aut_order_graph(DenseGraph.empty(14)) == math.factorial(14)
    assert aut_order_graph(DenseGraph.cycle(6)) == 12
    matching = DenseGraph.from_pairs(14, [(2 * i, 2 * i + 1) for i in range(7)])
    assert aut_order_graph(matching) == 645120
    two_c7 = DenseGraph.from_pairs(14, [(i, (i + 1) % 7) for i in range(7)]
                                   + [(7 + i, 7 + (i + 1) % 7) for i in range(7)])
    assert aut_order_graph(two_c7) == 392  # 14 * 14 * 2
    pet = nx.petersen_graph()
    assert canonicalize(ColoredGraph(10, nx_rows(pet))).aut_order == 120


def test_petersen_bruteforce():
    assert count_automorphisms(nx_rows(nx.petersen_graph())) == 120


def test_dense_form_is_16_bytes():
    rng = random.Random(14)
    for _ in range(100):
        rows = random_rows(rng, 14)
        g = DenseGraph.from_rows(rows)
        f = canonical_form_dense(g)
        assert len(f) == 16
        assert f == canonicalize(ColoredGraph(14, rows)).canonical_form


def test_large_graphs_against_networkx():
    rng = random.Random(15)
    for n, d in [(16, 3), (20, 3), (24, 4)]:
        g = nx.random_regular_graph(d, n, seed=rng.randrange(10**6))
        rows = nx_rows(g)
        gm = nx.algorithms.isomorphism.GraphMatcher(g, g)
        expect = sum(1 for _ in gm.isomorphisms_iter())
        assert canonicalize(ColoredGraph(n, rows)).aut_order == expect


def test_backends_agree():
    rng = random.Random(16)
    for _ in range(300):
        m = rng.randint(1, 30)
        g = ColoredGraph(m, random_rows(rng, m, rng.random()))
        nbrs = g.neighbours()
        assert _pycore.canon_search(m, nbrs, [list(range(m))]) == _backend.canon_search(m, nbrs, [list(range(m))])
    for _ in range(100):
        rows = random_rows(rng, 14)
        assert _pycore.canon_dense(14, rows) == _backend.canon_dense(14, rows)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        ColoredGraph(2, [0b10, 0])
    with pytest.raises(ValueError):
        ColoredGraph(2, [0b10, 0b01], [0, 2])
