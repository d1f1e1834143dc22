"""Independent generators of regular graphs, used to cross-check levels.

Nothing here goes through forward accumulation: graphs are built
directly and one-factorizability is decided by search.
"""
from __future__ import annotations

from typing import Dict, Iterator, List

from . import _backend
from .graphcore import form_to_rows, matchings_of_rows


def is_one_factorizable(n: int, rows: List[int]) -> bool:
    """True iff the edge set splits into perfect matchings."""
    rows = list(rows)
    if not any(rows):
        return True
    k = bin(rows[0]).count("1")
    if any(bin(r).count("1") != k for r in rows):
        return False

    def rec(rows):
        a = next((v for v in range(n) if rows[v]), None)
        if a is None:
            return True
        b = (rows[a] & -rows[a]).bit_length() - 1
        for m in matchings_of_rows(n, rows, (a, b)):
            nxt = list(rows)
            for x, y in m:
                nxt[x] &= ~(1 << y)
                nxt[y] &= ~(1 << x)
            if rec(nxt):
                return True
        return False

    return rec(rows)


def labeled_regular_graphs(n: int, k: int) -> Iterator[List[int]]:
    """Every labeled k-regular graph on n vertices, as adjacency rows.

    Plain backtracking over the upper triangle; only sensible for n <= 8.
    """
    rows = [0] * n
    deg = [0] * n

    def rec(v: int, j: int):
        if v == n:
            yield list(rows)
            return
        if j == n:
            if deg[v] == k:
                yield from rec(v + 1, v + 2)
            return
        need = k - deg[v]
        if need > n - j:
            return
        if need > 0 and deg[j] < k:
            rows[v] |= 1 << j
            rows[j] |= 1 << v
            deg[v] += 1
            deg[j] += 1
            yield from rec(v, j + 1)
            rows[v] &= ~(1 << j)
            rows[j] &= ~(1 << v)
            deg[v] -= 1
            deg[j] -= 1
        yield from rec(v, j + 1)

    yield from rec(0, 1)


def classes_of(n: int, graphs) -> Dict[bytes, int]:
    """Canonical form -> automorphism group order, over a stream of graphs."""
    out: Dict[bytes, int] = {}
    for rows in graphs:
        form, aut, _ = _backend.canon_dense(n, rows)
        out.setdefault(form, aut)
    return out


def _partitions(n: int, smallest: int) -> Iterator[List[int]]:
    if n == 0:
        yield []
        return
    for p in range(smallest, n + 1):
        for rest in _partitions(n - p, p):
            yield [p] + rest


def two_regular_graphs(n: int) -> Iterator[List[int]]:
    """One 2-regular graph per cycle-length partition of n into parts >= 3."""
    for parts in _partitions(n, 3):
        rows = [0] * n
        base = 0
        for p in parts:
            for i in range(p):
                a, b = base + i, base + (i + 1) % p
                rows[a] |= 1 << b
                rows[b] |= 1 << a
            base += p
        yield rows


def cubic_graphs(n: int) -> Iterator[List[int]]:
    """Cubic graphs on n <= 14 vertices, every class at least once.

    Cubic graphs with fewer than 16 vertices always have a perfect
    matching, and removing it leaves a 2-regular graph.  So every class
    arises as some 2-regular representative plus a perfect matching of
    its complement.
    """
    if n > 14:
        raise ValueError("the matching argument needs n < 16")
    full = (1 << n) - 1
    for c in two_regular_graphs(n):
        comp = [full & ~c[v] & ~(1 << v) for v in range(n)]
        for m in matchings_of_rows(n, comp):
            rows = list(c)
            for a, b in m:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
            yield rows


def low_degree_graphs(n: int, j: int) -> Iterator[List[int]]:
    """j-regular graphs for j <= 3, at least one per class."""
    if j == 0:
        yield [0] * n
    elif j == 1:
        rows = [0] * n
        for i in range(0, n, 2):
            rows[i] |= 1 << (i + 1)
            rows[i + 1] |= 1 << i
        yield rows
    elif j == 2:
        yield from two_regular_graphs(n)
    elif j == 3:
        yield from cubic_graphs(n)
    else:
        raise ValueError("only degrees 0..3 are generated directly")


def top_level_classes(n: int, k: int) -> Dict[bytes, int]:
    """One-factorizable k-regular classes for k >= n-4, via complements."""
    j = n - 1 - k
    full = (1 << n) - 1
    out: Dict[bytes, int] = {}
    for form, _ in classes_of(n, low_degree_graphs(n, j)).items():
        rows = form_to_rows(n, form)
        comp = [full & ~rows[v] & ~(1 << v) for v in range(n)]
        if is_one_factorizable(n, comp):
            cform, aut, _ = _backend.canon_dense(n, comp)
            out[cform] = aut
    return out
