"""Extend seeds to full one-factorizations and reject isomorphs.

The pairs a seed leaves uncovered become exact-cover items, and the
options are Pi-orbits of candidate blocks.  A solution plus the seed is a
one-factorization admitting Pi.  It is kept only if the seed it came from
is in a canonical Aut(X)-orbit of seeds and X is least in its orbit under
the seed's automorphisms (canonical augmentation).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .autotypes import ABSENT, FIXED, AutType, admissible_types, anchor_schema_for, m_value
from .gdd import (Block, Factorization, Perm, PrimeGroup, canonical_factorization, group_elements,
                  normalize_block, perm_power, prime_subgroups_of)
from .seedgen import Seed, SeedClass, classify_seeds, seed_aut_elements

log = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass
class CoverInstance:
    seed: Seed
    items: List[Pair]
    options: List[Tuple[Block, ...]]
    option_items: List[Tuple[int, ...]]

    @property
    def n(self) -> int:
        return self.seed.n


@dataclass
class AcceptedClass:
    form: bytes          # canonical block list, three bytes per block
    aut_order: int
    subgroup_types: Dict[Tuple[int, int, int], int]  # prime subgroups of Aut(X) per type


@dataclass
class ExtensionOutcome:
    seed_id: int
    ext_count: int
    accepted: List[AcceptedClass] = field(default_factory=list)


def _covered(seed: Seed) -> set:
    out = set()
    for a, b, c in seed.blocks:
        out.update(((a, b), (a, c), (b, c)))
    return out


def build_cover_instance(s: Seed, n: Optional[int] = None) -> CoverInstance:
    n = s.n if n is None else n
    nu, P = n - 1, 2 * n - 1
    cov = _covered(s)
    items = [(u, v) for u in range(nu) for v in range(nu, P) if (u, v) not in cov]
    items += [(v, w) for v in range(nu, P) for w in range(v + 1, P) if (v, w) not in cov]
    index = {pr: i for i, pr in enumerate(items)}
    powers = [perm_power(s.group.generator, j) for j in range(s.group.p)]
    seen = set()
    options, option_items = [], []
    for u in range(nu):
        for v in range(nu, P):
            if (u, v) not in index:
                continue
            for w in range(v + 1, P):
                if (u, w) not in index or (v, w) not in index:
                    continue
                orb = sorted({normalize_block(pw[x] for x in (u, v, w)) for pw in powers})
                if orb[0] in seen:
                    continue
                seen.add(orb[0])
                its = []
                ok = True
                for a, b, c in orb:
                    for pr in ((a, b), (a, c), (b, c)):
                        i = index.get(pr)
                        if i is None:
                            ok = False
                        its.append(i)
                if not ok or len(set(its)) != len(its):
                    continue
                options.append(tuple(orb))
                option_items.append(tuple(sorted(its)))
    return CoverInstance(s, items, options, option_items)


class _AlgorithmX:
    """Exact cover over dict-of-sets columns, minimum-options item first."""

    def __init__(self, c: CoverInstance, reverse: bool = False):
        self.Y = c.option_items
        self.X: Dict[int, set] = {i: set() for i in range(len(c.items))}
        for o, its in enumerate(self.Y):
            for i in its:
                self.X[i].add(o)
        self.reverse = reverse

    def select(self, o):
        X, Y = self.X, self.Y
        cols = []
        for i in Y[o]:
            for o2 in X[i]:
                for k in Y[o2]:
                    if k != i:
                        X[k].remove(o2)
            cols.append(X.pop(i))
        return cols

    def deselect(self, o, cols):
        X, Y = self.X, self.Y
        for i in reversed(Y[o]):
            X[i] = cols.pop()
            for o2 in X[i]:
                for k in Y[o2]:
                    if k != i:
                        X[k].add(o2)

    def choose(self):
        X = self.X
        col = min(X, key=lambda i: (len(X[i]), i))
        return sorted(X[col], reverse=self.reverse)

    def search(self, partial: list, emit: Callable[[list], None], depth: Optional[int] = None):
        """Depth-first search; with ``depth`` set, emit partial selections at that depth."""
        if not self.X or (depth is not None and len(partial) == depth):
            emit(list(partial))
            return
        for o in self.choose():
            cols = self.select(o)
            partial.append(o)
            self.search(partial, emit, depth)
            partial.pop()
            self.deselect(o, cols)


def _apply_prefix(ax: _AlgorithmX, prefix: Sequence[int]) -> bool:
    for o in prefix:
        if any(i not in ax.X for i in ax.Y[o]):
            return False
        ax.select(o)
    return True


def split_units(c: CoverInstance, depth: int) -> List[Tuple[int, ...]]:
    """Partial selections at search depth ``depth``; their subtrees partition the search."""
    ax = _AlgorithmX(c)
    out: List[Tuple[int, ...]] = []
    ax.search([], lambda p: out.append(tuple(p)), depth)
    return out


def solve_cover(c: CoverInstance, on_solution: Optional[Callable[[Factorization], None]] = None,
                prefix: Sequence[int] = (), reverse: bool = False) -> int:
    """Count exact covers (below ``prefix``), passing each completed factorization to the callback."""
    ax = _AlgorithmX(c, reverse)
    if not _apply_prefix(ax, prefix):
        return 0
    count = 0
    base = list(c.seed.blocks)

    def emit(sel):
        nonlocal count
        count += 1
        if on_solution is not None:
            blocks = base + [b for o in sel for b in c.options[o]]
            on_solution(Factorization(c.n, tuple(blocks)))

    ax.search(list(prefix), emit)
    return count


# -- canonical augmentation ---------------------------------------------------

def _anchor_sets(x: Factorization, grp: PrimeGroup, schema) -> List[Tuple[int, ...]]:
    """Every anchor set of the schema inside x for the group."""
    n, g = x.n, grp.generator
    nu, P = n - 1, 2 * n - 1

    def ok(pt, want):
        return (g[pt] == pt) == (want == FIXED)

    su, s1, s2 = schema
    out = []
    if su == ABSENT:
        for v in range(nu, P):
            for w in range(nu, P):
                if v != w and ok(v, s1) and ok(w, s2):
                    out.append(tuple(sorted((v, w))))
    elif s2 == ABSENT:
        for u in range(nu):
            for v in range(nu, P):
                if ok(u, su) and ok(v, s1):
                    out.append((u, v))
    else:
        for u, v, w in x.blocks:
            if not ok(u, su):
                continue
            if (ok(v, s1) and ok(w, s2)) or (ok(w, s1) and ok(v, s2)):
                out.append((u, v, w))
    return sorted(set(out))


class Acceptor:
    """Canonical-augmentation test, with caches shared across solutions of one run."""

    def __init__(self, n: int, types: Optional[Sequence[AutType]] = None):
        self.n = n
        types = admissible_types(n) if types is None else types
        self.schemas = {t.triple: t.anchor_schema for t in types}
        self._seed_auts: Dict[int, List[Perm]] = {}

    def seed_elements(self, sc: SeedClass) -> List[Perm]:
        key = id(sc)
        if key not in self._seed_auts:
            self._seed_auts[key] = seed_aut_elements(sc)
        return self._seed_auts[key]

    @staticmethod
    def _key(triple, anchor, g: Perm, lab: Sequence[int], p: int):
        h = [0] * len(g)
        gens = []
        pw = g
        for _ in range(1, p):
            for x in range(len(g)):
                h[lab[x]] = lab[pw[x]]
            gens.append(tuple(h))
            pw = tuple(g[y] for y in pw)
        return (triple, tuple(sorted(lab[x] for x in anchor)), min(gens))

    def is_orbit_min(self, x: Factorization, sc: SeedClass) -> bool:
        """Condition (ii): x is least in its orbit under Aut(seed)."""
        blocks = x.blocks
        for gamma in self.seed_elements(sc):
            img = sorted(normalize_block(gamma[a] for a in b) for b in blocks)
            if tuple(img) < blocks:
                return False
        return True

    def analyse(self, x: Factorization):
        """(canonical info, Aut(X) elements, prime subgroups) of x."""
        cf = canonical_factorization(x)
        elems = group_elements(cf.generators, 2 * x.n - 1)
        return cf, elems, prime_subgroups_of(x.n, elems)

    def accept(self, x: Factorization, sc: SeedClass, analysed=None) -> bool:
        if not self.is_orbit_min(x, sc):
            return False
        cf, elems, subs = analysed or self.analyse(x)
        lab = cf.labeling
        best = None
        for grp in subs:
            schema = self.schemas.get(grp.type)
            if schema is None:
                raise AssertionError(f"automorphism type {grp.type} is not admissible")
            for T in _anchor_sets(x, grp, schema):
                k = self._key(grp.type, T, grp.generator, lab, grp.p)
                if best is None or k < best:
                    best = k
        seed = sc.representative
        g, T, p = seed.group.generator, seed.anchor, seed.group.p
        for gamma in elems:
            gc = [0] * len(g)
            for a in range(len(g)):
                gc[gamma[a]] = gamma[g[a]]
            Tc = tuple(gamma[a] for a in T)
            if self._key(seed.group.type, Tc, tuple(gc), lab, p) == best:
                return True
        return False


def accept_canonical(x: Factorization, generating_seed: SeedClass) -> bool:
    return Acceptor(x.n).accept(x, generating_seed)


# -- whole classification -----------------------------------------------------

def extend_seed(sc: SeedClass, seed_id: int, acceptor: Acceptor, prefixes: Optional[Iterable] = None,
                validate: bool = False, reverse: bool = False) -> ExtensionOutcome:
    inst = build_cover_instance(sc.representative)
    out = ExtensionOutcome(seed_id, 0)

    def on_solution(x: Factorization):
        if validate:
            x.validate()
        if not acceptor.is_orbit_min(x, sc):
            return
        an = acceptor.analyse(x)
        if acceptor.accept(x, sc, an):
            cf, _elems, subs = an
            types: Dict[Tuple[int, int, int], int] = {}
            for grp in subs:
                types[grp.type] = types.get(grp.type, 0) + 1
            out.accepted.append(AcceptedClass(cf.serialize(), cf.aut_order, types))

    for pre in (prefixes if prefixes is not None else [()]):
        out.ext_count += solve_cover(inst, on_solution, pre, reverse)
    return out


@dataclass
class SymmetricClassification:
    n: int
    seeds: Dict[Tuple[int, int, int], List[SeedClass]]
    outcomes: Dict[Tuple[int, int, int], List[ExtensionOutcome]]

    def accepted(self) -> List[AcceptedClass]:
        return [a for outs in self.outcomes.values() for o in outs for a in o.accepted]

    def tallies(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for a in self.accepted():
            out[a.aut_order] = out.get(a.aut_order, 0) + 1
        return dict(sorted(out.items()))


def classify_symmetric(n: int, types: Optional[Sequence[AutType]] = None, validate: bool = False,
                       reverse: bool = False) -> SymmetricClassification:
    """Every one-factorization of K_n with a nontrivial automorphism, once each."""
    all_types = admissible_types(n)
    types = all_types if types is None else types
    acceptor = Acceptor(n, all_types)
    seeds, outcomes = {}, {}
    for t in types:
        seeds[t.triple] = classify_seeds(t, n)
        outcomes[t.triple] = [extend_seed(sc, i, acceptor, validate=validate, reverse=reverse)
                              for i, sc in enumerate(seeds[t.triple])]
        log.info("type %s: %d seeds, %d solutions, %d accepted", t, len(seeds[t.triple]),
                 sum(o.ext_count for o in outcomes[t.triple]),
                 sum(len(o.accepted) for o in outcomes[t.triple]))
    return SymmetricClassification(n, seeds, outcomes)


def group_order(n: int) -> int:
    """|Gamma| = (n-1)! n!."""
    return math.factorial(n - 1) * math.factorial(n)
