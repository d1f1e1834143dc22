"""Brute-force classification of one-factorizations of K_n for n <= 10.

Kept apart from the package so the extender is checked against a
search that shares none of its pruning.  Every factorization contains two
factors whose union has some cycle type (a partition of n into even parts
of size at least 4), and relabeling makes those two factors standard.  So
fixing F1 = {01, 23, ...} and one F2 per cycle type, then completing in
every way, reaches every isomorphism class.
"""
from __future__ import annotations

from typing import Dict, List, Tuple

from onefact.gdd import Factorization, canonical_factorization


def _even_partitions(n: int, smallest: int = 4):
    if n == 0:
        yield []
        return
    for p in range(smallest, n + 1, 2):
        for rest in _even_partitions(n - p, p):
            yield [p] + rest


def _second_factor(parts: List[int]) -> List[Tuple[int, int]]:
    """F2 making F1 + F2 a union of cycles of the given lengths."""
    pairs = []
    base = 0
    for L in parts:
        # cycle base, base+1, ..., base+L-1 with F1 edges (base+2i, base+2i+1)
        for i in range(L // 2):
            a = base + 2 * i + 1
            b = base + (2 * i + 2) % L
            pairs.append((min(a, b), max(a, b)))
        base += L
    return pairs


def _completions(n: int, rows: List[int]):
    """Every set of perfect matchings partitioning the graph ``rows``."""
    v = next((i for i in range(n) if rows[i]), None)
    if v is None:
        yield []
        return
    for m in _matchings_through(n, rows, v):
        nxt = list(rows)
        for a, b in m:
            nxt[a] &= ~(1 << b)
            nxt[b] &= ~(1 << a)
        for rest in _completions(n, nxt):
            yield [m] + rest


def _matchings_through(n, rows, first):
    """Perfect matchings of ``rows``; the factor holding ``first``'s lowest edge is forced."""
    lowest = (rows[first] & -rows[first]).bit_length() - 1

    def rec(free, acc):
        if not free:
            yield list(acc)
            return
        a = (free & -free).bit_length() - 1
        cand = rows[a] & free & ~(1 << a)
        if a == first:
            cand &= 1 << lowest
        while cand:
            low = cand & -cand
            b = low.bit_length() - 1
            acc.append((a, b))
            yield from rec(free & ~(1 << a) & ~low, acc)
            acc.pop()
            cand ^= low

    yield from rec((1 << n) - 1, [])


def brute_force_classes(n: int) -> Dict[bytes, int]:
    """Canonical serialization -> |Aut| for every one-factorization class of K_n."""
    f1 = [(i, i + 1) for i in range(0, n, 2)]
    out: Dict[bytes, int] = {}
    full = (1 << n) - 1
    for parts in _even_partitions(n):
        f2 = _second_factor(parts)
        rows = [full & ~(1 << v) for v in range(n)]
        for a, b in f1 + f2:
            rows[a] &= ~(1 << b)
            rows[b] &= ~(1 << a)
        for rest in _completions(n, rows):
            blocks = [(u, n - 1 + a, n - 1 + b) for u, m in enumerate([f1, f2] + rest) for a, b in m]
            cf = canonical_factorization(Factorization(n, tuple(blocks)))
            out.setdefault(cf.serialize(), cf.aut_order)
    return out
