"""Dense small graphs on at most 14 vertices and their one-factors.

A graph is stored as a single integer bitmask over the unordered vertex
pairs.  The pair {i, j} with i < j lives at bit

    i*n - i*(i+1)//2 + (j - i - 1)

i.e. the upper triangle of the adjacency matrix read row by row.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple

MAX_N = 14

Pair = Tuple[int, int]


class OverlapError(ValueError):
    """A one-factor pair is already an edge of the graph."""


@lru_cache(maxsize=None)
def pair_index(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Table ``t[i][j]`` of bit positions (symmetric, diagonal -1)."""
    t = [[-1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b = i * n - i * (i + 1) // 2 + (j - i - 1)
            t[i][j] = t[j][i] = b
    return tuple(tuple(r) for r in t)


@lru_cache(maxsize=None)
def index_pairs(n: int) -> Tuple[Pair, ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def rows_to_edges(n: int, rows: Sequence[int]) -> int:
    t = pair_index(n)
    e = 0
    for i in range(n):
        r = rows[i] >> (i + 1)
        j = i + 1
        while r:
            if r & 1:
                e |= 1 << t[i][j]
            r >>= 1
            j += 1
    return e


def edges_to_rows(n: int, edges: int) -> list:
    rows = [0] * n
    for b, (i, j) in enumerate(index_pairs(n)):
        if edges >> b & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return rows


def form_to_rows(n: int, form: bytes) -> list:
    """Adjacency rows of a graph given by its little-endian edge bytes."""
    return edges_to_rows(n, int.from_bytes(form, "little"))


@dataclass(frozen=True)
class DenseGraph:
    n: int
    edges: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= 16:
            raise ValueError(f"vertex count {self.n} out of range")
        if self.edges < 0 or self.edges >> num_pairs(self.n):
            raise ValueError("edge bits outside the pair universe")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "DenseGraph":
        t = pair_index(n)
        e = 0
        for i, j in pairs:
            if i == j:
                raise ValueError("loops are not allowed")
            e |= 1 << t[i][j]
        return cls(n, e)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "DenseGraph":
        return cls(len(rows), rows_to_edges(len(rows), rows))

    @classmethod
    def complete(cls, n: int) -> "DenseGraph":
        return cls(n, (1 << num_pairs(n)) - 1)

    @classmethod
    def empty(cls, n: int) -> "DenseGraph":
        return cls(n, 0)

    @classmethod
    def cycle(cls, n: int) -> "DenseGraph":
        return cls.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and bool(self.edges >> pair_index(self.n)[i][j] & 1)

    def rows(self) -> list:
        return edges_to_rows(self.n, self.edges)

    def pairs(self) -> list:
        return [p for b, p in enumerate(index_pairs(self.n)) if self.edges >> b & 1]

    def num_edges(self) -> int:
        return bin(self.edges).count("1")

    def degree(self, v: int) -> int:
        t = pair_index(self.n)[v]
        return sum(1 for u in range(self.n) if u != v and self.edges >> t[u] & 1)

    def degrees(self) -> list:
        return [bin(r).count("1") for r in self.rows()]

    def relabel(self, perm: Sequence[int]) -> "DenseGraph":
        """Image under the vertex map ``v -> perm[v]``."""
        return DenseGraph.from_pairs(self.n, [(perm[i], perm[j]) for i, j in self.pairs()])

    def remove(self, f: "OneFactor") -> "DenseGraph":
        return DenseGraph(self.n, self.edges & ~f.mask())


@dataclass(frozen=True)
class OneFactor:
    n: int
    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        norm = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        seen = sorted(v for p in norm for v in p)
        if seen != list(range(self.n)):
            raise ValueError("pairs do not partition the vertex set")
        object.__setattr__(self, "pairs", norm)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "OneFactor":
        return cls(n, tuple(p for b, p in enumerate(index_pairs(n)) if mask >> b & 1))

    def mask(self) -> int:
        t = pair_index(self.n)
        e = 0
        for i, j in self.pairs:
            e |= 1 << t[i][j]
        return e

    def as_graph(self) -> DenseGraph:
        return DenseGraph(self.n, self.mask())


def is_k_regular(g: DenseGraph, k: int) -> bool:
    return all(d == k for d in g.degrees())


def regular_degree(g: DenseGraph) -> Optional[int]:
    ds = set(g.degrees())
    return ds.pop() if len(ds) == 1 else None


def complement(g: DenseGraph) -> DenseGraph:
    return DenseGraph(g.n, ((1 << num_pairs(g.n)) - 1) & ~g.edges)


def union_with_factor(h: DenseGraph, f: OneFactor) -> DenseGraph:
    if f.n != h.n:
        raise ValueError("vertex counts differ")
    m = f.mask()
    if h.edges & m:
        raise OverlapError("one-factor overlaps the graph")
    return DenseGraph(h.n, h.edges | m)


def matchings_of_rows(n: int, rows: Sequence[int], first: Optional[Pair] = None) -> Iterator[list]:
    """Perfect matchings of the graph with adjacency ``rows``.

    Yields lists of pairs.  The lowest unmatched vertex is matched first,
    partners in increasing order, so the output is lexicographic by the
    sorted pair list.  With ``first`` the matching is forced to use that edge.
    """
    full = (1 << n) - 1
    out = []

    def rec(free: int):
        if not free:
            yield list(out)
            return
        v = (free & -free).bit_length() - 1
        cand = rows[v] & free
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            out.append((v, w))
            yield from rec(free & ~(1 << v) & ~low)
            out.pop()

    if first is None:
        yield from rec(full)
        return
    a, b = min(first), max(first)
    if not rows[a] >> b & 1:
        raise ValueError(f"edge {first} is not in the graph")
    for m in rec(full & ~(1 << a) & ~(1 << b)):
        yield sorted(m + [(a, b)])


def enumerate_one_factors(g: DenseGraph, through_edge: Optional[Pair] = None) -> Iterator[OneFactor]:
    rows = g.rows()
    if through_edge is not None and not g.has_edge(*through_edge):
        raise ValueError(f"edge {through_edge} is not in the graph")
    for m in matchings_of_rows(g.n, rows, through_edge):
        yield OneFactor(g.n, tuple(m))


def double_factorial(k: int) -> int:
    r = 1
    while k > 1:
        r *= k
        k -= 2
    return r


def count_labeled_factorizations_bruteforce(g: DenseGraph) -> int:
    """LF(g) by plain backtracking over edge partitions.

    Factors are produced in the order of the partner of vertex 0, so each
    unordered factorization is met exactly once.  Independent of the
    level pipeline; meant for n <= 10.
    """
    n = g.n
    if g.edges == 0:
        return 1
    rows = g.rows()
    k = bin(rows[0]).count("1")
    if any(bin(r).count("1") != k for r in rows):
        return 0

    def count(rows: list) -> int:
        if rows[0] == 0:
            return 1
        w = (rows[0] & -rows[0]).bit_length() - 1
        total = 0
        for m in matchings_of_rows(n, rows, (0, w)):
            nxt = list(rows)
            for a, b in m:
                nxt[a] &= ~(1 << b)
                nxt[b] &= ~(1 << a)
            total += count(nxt)
        return total

    return count(rows)
