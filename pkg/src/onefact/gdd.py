"""One-factorizations as block designs over points U and V.

Points 0..n-2 stand for the one-factors (the set U) and points
n-1..2n-2 for the vertices of K_n (the set V).  A block {u, v, w} says
that edge {v, w} lies in factor u.  Since every U point is smaller than
every V point, a block is stored as the sorted triple (u, v, w).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .canon import ColoredGraph, canonicalize, canonicalize_lists
from .graphcore import OneFactor

Block = Tuple[int, int, int]
Perm = Tuple[int, ...]


class InvalidFactorization(ValueError):
    pass


@dataclass(frozen=True)
class PointSpace:
    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError("n must be even and at least 2")

    @property
    def num_points(self) -> int:
        return 2 * self.n - 1

    @property
    def U(self) -> range:
        return range(0, self.n - 1)

    @property
    def V(self) -> range:
        return range(self.n - 1, 2 * self.n - 1)

    def is_u(self, x: int) -> bool:
        return x < self.n - 1

    def vertex(self, i: int) -> int:
        """Point for graph vertex i."""
        return self.n - 1 + i


def normalize_block(b: Iterable[int]) -> Block:
    t = tuple(sorted(b))
    if len(t) != 3 or len(set(t)) != 3:
        raise ValueError(f"bad block {b}")
    return t


def block_pairs(b: Block):
    a, c, d = b
    return ((a, c), (a, d), (c, d))


@dataclass(frozen=True)
class Factorization:
    n: int
    blocks: Tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(normalize_block(b) for b in self.blocks)))

    @property
    def space(self) -> PointSpace:
        return PointSpace(self.n)

    def validate(self) -> None:
        """Raise unless conditions (a)-(c) hold."""
        n = self.n
        sp = self.space
        if len(self.blocks) != n * (n - 1) // 2:
            raise InvalidFactorization(f"expected {n * (n - 1) // 2} blocks, got {len(self.blocks)}")
        seen = set()
        for b in self.blocks:
            if not all(0 <= x < sp.num_points for x in b):
                raise InvalidFactorization(f"block {b} outside the point set")
            if not sp.is_u(b[0]) or sp.is_u(b[1]):
                raise InvalidFactorization(f"block {b} does not have exactly one U point")
            for p in block_pairs(b):
                if p in seen:
                    raise InvalidFactorization(f"pair {p} covered twice")
                seen.add(p)
        # (n-1)*n U-V pairs plus n(n-1)/2 V-V pairs, each exactly once
        if len(seen) != (n - 1) * n + n * (n - 1) // 2:
            raise InvalidFactorization("some pair is not covered")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidFactorization:
            return False
        return True

    def to_factors(self) -> List[OneFactor]:
        n = self.n
        pairs: Dict[int, list] = {u: [] for u in range(n - 1)}
        for u, v, w in self.blocks:
            pairs[u].append((v - (n - 1), w - (n - 1)))
        return [OneFactor(n, tuple(pairs[u])) for u in range(n - 1)]

    def relabel(self, perm: Sequence[int]) -> "Factorization":
        return Factorization(self.n, tuple((perm[a], perm[b], perm[c]) for a, b, c in self.blocks))

    def serialize(self) -> bytes:
        """Sorted block list, three bytes per block."""
        return bytes(x for b in self.blocks for x in b)

    @classmethod
    def deserialize(cls, n: int, data: bytes) -> "Factorization":
        return cls(n, tuple(tuple(data[i:i + 3]) for i in range(0, len(data), 3)))


def from_graphical(factors: Sequence[OneFactor]) -> Factorization:
    if not factors:
        raise InvalidFactorization("no factors")
    n = factors[0].n
    if len(factors) != n - 1:
        raise InvalidFactorization(f"need {n - 1} factors, got {len(factors)}")
    used = set()
    blocks = []
    for k, f in enumerate(factors):
        if f.n != n:
            raise InvalidFactorization("factors on different vertex sets")
        for i, j in f.pairs:
            if (i, j) in used:
                raise InvalidFactorization(f"edge {(i, j)} in two factors")
            used.add((i, j))
            blocks.append((k, n - 1 + i, n - 1 + j))
    x = Factorization(n, tuple(blocks))
    x.validate()
    return x


def incidence_graph(n: int, blocks: Sequence[Block], point_colors: Sequence[int] = None,
                    block_color: int = None, extra_edges: Iterable = (), extra_colors: Sequence[int] = ()):
    """Point-block incidence graph as (m, edge list, colours).

    Points keep indices 0..2n-2, blocks follow, then any extra vertices.
    """
    npts = 2 * n - 1
    if point_colors is None:
        point_colors = [0] * (n - 1) + [1] * n
    if block_color is None:
        block_color = max(point_colors) + 1
    m = npts + len(blocks) + len(extra_colors)
    edges = []
    for i, b in enumerate(blocks):
        for x in b:
            edges.append((x, npts + i))
    edges.extend(extra_edges)
    colors = list(point_colors) + [block_color] * len(blocks) + list(extra_colors)
    return m, edges, colors


def _compact_colors(colors: Sequence[int]) -> List[int]:
    used = sorted(set(colors))
    idx = {c: i for i, c in enumerate(used)}
    return [idx[c] for c in colors]


def colored_graph_from(m: int, edges, colors) -> ColoredGraph:
    return ColoredGraph.from_edges(m, edges, _compact_colors(colors))


def to_colored_graph(x: Factorization) -> ColoredGraph:
    m, edges, colors = incidence_graph(x.n, x.blocks)
    return ColoredGraph.from_edges(m, edges, colors)


@dataclass(frozen=True)
class CanonicalFactorization:
    labeling: Tuple[int, ...]   # point -> canonical point
    blocks: Tuple[Block, ...]   # canonical block list
    aut_order: int
    generators: Tuple[Perm, ...]  # automorphisms of the input, on points

    def serialize(self) -> bytes:
        return bytes(v for b in self.blocks for v in b)


def point_invariants(n: int, blocks: Sequence[Block]) -> List[tuple]:
    """Isomorphism-invariant colour of every point.

    Factor u gets the sorted cycle types of F_u + F_w over all w; vertex v
    gets the sorted lengths of the cycle through v in every F_u + F_w.
    These split the points far more than refinement alone does, which
    keeps the canonical search shallow.
    """
    nu = n - 1
    mate = [[0] * n for _ in range(nu)]
    for u, a, b in blocks:
        mate[u][a - nu] = b - nu
        mate[u][b - nu] = a - nu
    ucol = [[] for _ in range(nu)]
    vcol = [[] for _ in range(n)]
    for u in range(nu):
        mu = mate[u]
        for w in range(u + 1, nu):
            mw = mate[w]
            seen = [False] * n
            lengths = []
            for s in range(n):
                if seen[s]:
                    continue
                cyc = []
                x = s
                while not seen[x]:
                    seen[x] = True
                    cyc.append(x)
                    y = mu[x]
                    seen[y] = True
                    cyc.append(y)
                    x = mw[y]
                L = len(cyc)
                lengths.append(L)
                for x in cyc:
                    vcol[x].append(L)
            t = tuple(sorted(lengths))
            ucol[u].append(t)
            ucol[w].append(t)
    return [(0, tuple(sorted(c))) for c in ucol] + [(1, tuple(sorted(c))) for c in vcol]


def canonical_factorization(x: Factorization) -> CanonicalFactorization:
    n = x.n
    npts = 2 * n - 1
    nbrs = [[] for _ in range(npts)]
    for i, b in enumerate(x.blocks):
        nbrs.append(list(b))
        for p in b:
            nbrs[p].append(npts + i)
    colors = point_invariants(n, x.blocks) + [(2,)] * len(x.blocks)
    res = canonicalize_lists(len(nbrs), nbrs, colors)
    lab = res.canonical_labeling[:npts]
    blocks = tuple(sorted(tuple(sorted((lab[a], lab[b], lab[c]))) for a, b, c in x.blocks))
    gens = tuple(tuple(g[:npts]) for g in res.aut_generators)
    return CanonicalFactorization(tuple(lab), blocks, res.aut_order, gens)


def aut_group(x: Factorization) -> Tuple[int, List[Perm]]:
    c = canonical_factorization(x)
    return c.aut_order, list(c.generators)


# -- small permutation groups ------------------------------------------------

def compose(a: Perm, b: Perm) -> Perm:
    """Apply b first, then a."""
    return tuple(a[x] for x in b)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_power(a: Perm, k: int) -> Perm:
    out = tuple(range(len(a)))
    for _ in range(k):
        out = compose(a, out)
    return out


def perm_order(a: Perm) -> int:
    seen = [False] * len(a)
    order = 1
    for i in range(len(a)):
        if not seen[i]:
            L = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                L += 1
            order = order * L // _gcd(order, L)
    return order


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def group_elements(gens: Sequence[Perm], degree: int, limit: int = 10**6) -> List[Perm]:
    """All elements of the group generated by ``gens`` (breadth-first closure)."""
    e = tuple(range(degree))
    elems = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = compose(g, h)
                if k not in elems:
                    elems.add(k)
                    nxt.append(k)
                    if len(elems) > limit:
                        raise ValueError("group larger than the closure limit")
        frontier = nxt
    return sorted(elems)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class PrimeGroup:
    n: int
    p: int
    generator: Perm
    f_U: int
    f_V: int

    @property
    def type(self) -> Tuple[int, int, int]:
        return (self.p, self.f_U, self.f_V)

    def elements(self) -> List[Perm]:
        return [perm_power(self.generator, j) for j in range(self.p)]

    def check(self) -> None:
        n = self.n
        g = self.generator
        if perm_order(g) != self.p or not _is_prime(self.p):
            raise ValueError("generator does not have prime order p")
        if any((g[x] < n - 1) != (x < n - 1) for x in range(2 * n - 1)):
            raise ValueError("generator does not fix U and V setwise")
        if (n - 1 - self.f_U) % self.p or (n - self.f_V) % self.p:
            raise ValueError("p does not divide the moved-point counts")


def prime_group_of(n: int, g: Perm) -> PrimeGroup:
    fu = sum(1 for x in range(n - 1) if g[x] == x)
    fv = sum(1 for x in range(n - 1, 2 * n - 1) if g[x] == x)
    return PrimeGroup(n, perm_order(g), tuple(g), fu, fv)


def subgroup_key(g: Perm, p: int) -> Perm:
    """Canonical generator of <g>: the least of its nonidentity powers."""
    return min(perm_power(g, j) for j in range(1, p))


def prime_subgroups_of(n: int, elements: Iterable[Perm]) -> List[PrimeGroup]:
    seen = {}
    for g in elements:
        p = perm_order(g)
        if p > 1 and _is_prime(p):
            key = subgroup_key(g, p)
            if key not in seen:
                seen[key] = prime_group_of(n, key)
    return [seen[k] for k in sorted(seen)]


def prime_subgroups(x: Factorization) -> List[PrimeGroup]:
    _, gens = aut_group(x)
    return prime_subgroups_of(x.n, group_elements(gens, 2 * x.n - 1))
