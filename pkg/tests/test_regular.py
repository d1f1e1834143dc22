from onefact.graphcore import DenseGraph
from onefact.regular import (
    classes_of, cubic_graphs, is_one_factorizable, labeled_regular_graphs, top_level_classes,
    two_regular_graphs,
)


def test_factorizability():
    assert is_one_factorizable(6, DenseGraph.complete(6).rows())
    assert is_one_factorizable(6, DenseGraph.cycle(6).rows())
    # two triangles: 2-regular, no perfect matching
    tri = DenseGraph.from_pairs(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_one_factorizable(6, tri.rows())
    prism = DenseGraph.from_pairs(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    assert is_one_factorizable(6, prism.rows())


def test_labeled_counts():
    # labeled cubic graphs on 6 vertices: 70; 2-regular on 6: 70 as well
    assert sum(1 for _ in labeled_regular_graphs(6, 3)) == 70
    assert sum(1 for _ in labeled_regular_graphs(6, 2)) == 70
    assert sum(1 for _ in labeled_regular_graphs(8, 3)) == 19355


def test_cubic_class_counts():
    # cubic graphs (connected or not) on 4..12 vertices
    expect = {4: 1, 6: 2, 8: 6, 10: 21, 12: 94}
    for n, c in expect.items():
        assert len(classes_of(n, cubic_graphs(n))) == c


def test_two_regular_partitions():
    assert sum(1 for _ in two_regular_graphs(14)) == 13


def test_top_levels_small():
    assert len(top_level_classes(8, 4)) == 6
    assert len(top_level_classes(8, 5)) == 3
