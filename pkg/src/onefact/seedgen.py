"""Seeds (group, anchor set, partial block set) and their classification.

A seed for a prime-order group Pi is grown one anchor point at a time.
After each new anchor t, every pair through t is covered by Pi-orbits of
blocks in all possible ways (saturation), and the resulting partial seeds
are reduced to one representative per isomorphism class.

Isomorphism is tested through a coloured graph: the point-block incidence
graph, points coloured by U/V, anchor role and fixed/moved, plus a marker
for the generator g.  For p = 2 that marker is an edge x -- g(x); for odd
p it is a directed gadget x -> tail -> head -> g(x).  Two seeds with the
same group are isomorphic iff E(g) of one matches E(g^j) of the other for
some j, so the seed form is the least form over j = 1..p-1.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .autotypes import ABSENT, FIXED, MOVED, AutType, m_value
from .canon import canonicalize_lists
from .gdd import Block, Perm, PrimeGroup, compose, group_elements, inverse, normalize_block, perm_power

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Seed:
    group: PrimeGroup
    anchor: Tuple[int, ...]
    blocks: Tuple[Block, ...]

    @property
    def n(self) -> int:
        return self.group.n

    def serialize(self) -> str:
        """One text line: type, generator, anchor, blocks."""
        g = self.group
        blocks = " ".join(f"{a},{b},{c}" for a, b, c in self.blocks)
        return (f"{g.p},{g.f_U},{g.f_V} | {' '.join(map(str, g.generator))} | "
                f"{' '.join(map(str, self.anchor))} | {blocks}")

    @classmethod
    def deserialize(cls, n: int, line: str) -> "Seed":
        typ, gen, anchor, blocks = (s.strip() for s in line.split("|"))
        p, fu, fv = map(int, typ.split(","))
        g = tuple(map(int, gen.split()))
        blks = tuple(tuple(map(int, b.split(","))) for b in blocks.split())
        return cls(PrimeGroup(n, p, g, fu, fv), tuple(map(int, anchor.split())), blks)

    def sort_key(self):
        return (self.anchor, self.blocks)


@dataclass(frozen=True)
class SeedClass:
    representative: Seed
    aut_order: int
    aut_generators: Tuple[Perm, ...]
    form: bytes


# -- the fixed group of each type ---------------------------------------------

def fix_group_representative(t: AutType, n: int) -> PrimeGroup:
    """Fixed points first in U and in V, then consecutive p-cycles."""
    p, fu, fv = t.triple
    g = list(range(2 * n - 1))
    for start, size, fixed in ((0, n - 1, fu), (n - 1, n, fv)):
        moved = size - fixed
        if moved % p:
            raise ValueError(f"type {t} does not divide the point counts")
        base = start + fixed
        for c in range(moved // p):
            for i in range(p):
                g[base + c * p + i] = base + c * p + (i + 1) % p
    grp = PrimeGroup(n, p, tuple(g), fu, fv)
    grp.check()
    return grp


def normalizer_order(group: PrimeGroup) -> int:
    """|N(Pi)| inside Sym(U) x Sym(V): |C(g)| * (p - 1)."""
    n, p = group.n, group.p
    out = p - 1
    for size, fixed in ((n - 1, group.f_U), (n, group.f_V)):
        c = (size - fixed) // p
        out *= math.factorial(fixed) * math.factorial(c) * p ** c
    return out


def seed_m_value(t: AutType, n: int) -> int:
    return m_value(t, n)


# -- independent condition checker ---------------------------------------------

def seed_violations(seed: Seed, t: Optional[AutType] = None) -> List[str]:
    """Conditions (a')-(g') that fail, plus closure and anchor-schema checks."""
    n = seed.n
    g = seed.group.generator
    nu = n - 1
    bad = []
    pairs = {}
    for b in seed.blocks:
        x = sorted(b)
        if sum(1 for y in x if y < nu) != 1:
            bad.append("c'")
        for i in range(3):
            for j in range(i + 1, 3):
                pr = (x[i], x[j])
                pairs[pr] = pairs.get(pr, 0) + 1
    if any(c > 1 for pr, c in pairs.items() if pr[0] < nu):
        bad.append("a'")
    if any(c > 1 for pr, c in pairs.items() if pr[0] >= nu):
        bad.append("b'")
    T = set(seed.anchor)
    deg = {x: 0 for x in T}
    for b in seed.blocks:
        for x in b:
            if x in deg:
                deg[x] += 1
    if any(deg[x] != n // 2 for x in T if x < nu):
        bad.append("d'")
    if any(deg[x] != n - 1 for x in T if x >= nu):
        bad.append("e'")
    bset = set(seed.blocks)
    if any(normalize_block(g[x] for x in b) not in bset for b in seed.blocks):
        bad.append("closure")
    # every orbit meets T: follow each block's orbit
    for b in seed.blocks:
        c, hit = b, False
        for _ in range(seed.group.p):
            if T & set(c):
                hit = True
                break
            c = normalize_block(g[x] for x in c)
        if not hit:
            bad.append("f'")
            break
    if not any(T <= set(b) for b in seed.blocks):
        bad.append("g'")
    if t is not None:
        want = [(s, k) for s, k in zip(t.anchor_schema, ("U", "V", "V")) if s != ABSENT]
        have = sorted((FIXED if g[x] == x else MOVED, "U" if x < nu else "V") for x in T)
        if sorted((s, k) for s, k in want) != have:
            bad.append("schema")
    return bad


# -- growth --------------------------------------------------------------------

class _Grower:
    def __init__(self, t: AutType, n: int):
        self.t, self.n = t, n
        self.group = fix_group_representative(t, n)
        self.g = self.group.generator
        self.p = t.p
        self.P = 2 * n - 1
        self.powers = [perm_power(self.g, j) for j in range(self.p)]
        self._orbits: Dict[Block, Optional[Tuple[Block, ...]]] = {}

    def is_u(self, x):
        return x < self.n - 1

    def orbit(self, b: Block) -> Optional[Tuple[Block, ...]]:
        """Sorted Pi-orbit of b, or None if two of its blocks share a pair."""
        if b in self._orbits:
            return self._orbits[b]
        blocks = sorted({normalize_block(pw[x] for x in b) for pw in self.powers})
        seen = set()
        ok = True
        for c in blocks:
            for pr in ((c[0], c[1]), (c[0], c[2]), (c[1], c[2])):
                if pr in seen:
                    ok = False
                seen.add(pr)
        res = tuple(blocks) if ok else None
        for c in blocks:
            self._orbits[c] = res
        return res

    @staticmethod
    def _free(cov, orb) -> bool:
        for a, b, c in orb:
            if cov[a] >> b & 1 or cov[a] >> c & 1 or cov[b] >> c & 1:
                return False
        return True

    @staticmethod
    def _cover(cov, orb):
        cov = list(cov)
        for a, b, c in orb:
            cov[a] |= 1 << b | 1 << c
            cov[b] |= 1 << a | 1 << c
            cov[c] |= 1 << a | 1 << b
        return cov

    def options(self, t: int, x: int, cov) -> List[Tuple[Block, ...]]:
        """Valid orbits of blocks through the uncovered pair {t, x}."""
        nu = self.n - 1
        if self.is_u(t) or self.is_u(x):
            thirds = range(nu, self.P)
        else:
            thirds = range(nu)
        out = []
        for y in thirds:
            if y == t or y == x or cov[t] >> y & 1 or cov[x] >> y & 1:
                continue
            orb = self.orbit(normalize_block((t, x, y)))
            if orb is not None and self._free(cov, orb):
                out.append(orb)
        return out

    def branch(self, t: int, cov) -> Optional[List[Tuple[Block, ...]]]:
        """Options for the uncovered pair through t with the fewest of them.

        Returns [] when t is saturated and None when some pair through t
        can no longer be covered.
        """
        nu = self.n - 1
        rng = range(nu, self.P) if self.is_u(t) else range(self.P)
        best = None
        for x in rng:
            if x == t or cov[t] >> x & 1:
                continue
            opts = self.options(t, x, cov)
            if not opts:
                return None
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) == 1:
                    break
        return [] if best is None else best

    def saturate(self, t: int, blocks: Tuple[Block, ...], cov) -> Iterator[Tuple[Tuple[Block, ...], list]]:
        """All ways to cover every pair through t, without isomorph rejection."""
        opts = self.branch(t, cov)
        if opts is None:
            return
        if not opts:
            yield blocks, cov
            return
        for orb in opts:
            yield from self.saturate(t, blocks + orb, self._cover(cov, orb))

    # -- isomorphism ---------------------------------------------------------

    def _graph(self, anchors: Sequence[Tuple[int, int]], blocks, j: int):
        """Coloured graph E(g^j); anchors are (point, role) pairs."""
        P = self.P
        gj = self.powers[j]
        role = dict(anchors)
        colors = []
        for x in range(P):
            colors.append((0, 0 if self.is_u(x) else 1, role.get(x, -1), gj[x] == x))
        nbrs = [[] for _ in range(P)]
        m = P
        for b in blocks:
            nbrs.append(list(b))
            for x in b:
                nbrs[x].append(m)
            colors.append((1,))
            m += 1
        for x in range(P):
            y = gj[x]
            if y == x:
                continue
            if self.p == 2:
                nbrs[x].append(y)
            else:
                tail, head = m, m + 1
                nbrs.append([x, head])
                nbrs.append([tail, y])
                nbrs[x].append(tail)
                nbrs[y].append(head)
                colors.extend([(2,), (3,)])
                m += 2
        return m, nbrs, colors

    def form(self, anchors, blocks):
        """(form, aut order, point generators) of the seed up to isomorphism."""
        results = []
        for j in range(1, self.p):
            m, nbrs, colors = self._graph(anchors, blocks, j)
            results.append(canonicalize_lists(m, nbrs, colors))
        best = min(r.canonical_form for r in results)
        P = self.P
        r1 = results[0]
        gens = [tuple(g[:P]) for g in r1.aut_generators]
        mult = 0
        lab1_inv = inverse(r1.canonical_labeling)
        for r in results:
            if r.canonical_form == r1.canonical_form:
                mult += 1
                if r is not r1:
                    # maps g^j to g: an element of the normaliser fixing the seed
                    gens.append(tuple(lab1_inv[r.canonical_labeling[x]] for x in range(P)))
        return best, r1.aut_order * mult, gens


def _point_orbits(gens: Sequence[Perm], points: Sequence[int]) -> List[int]:
    """One representative per orbit of the generated group, among ``points``."""
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for g in gens:
        for x in range(len(g)):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    seen, out = set(), []
    for x in points:
        r = find(x)
        if r not in seen:
            seen.add(r)
            out.append(x)
    return out


def _class_cyclers(gr: _Grower) -> List[Perm]:
    """Permutations whose orbits are the four classes U/V x fixed/moved.

    These are the point orbits of the normaliser of Pi, which is all that
    the choice of the first anchor needs.
    """
    nu = gr.n - 1
    out = []
    for pts in (range(nu), range(nu, gr.P)):
        for fixed in (True, False):
            cls = [x for x in pts if (gr.g[x] == x) == fixed]
            perm = list(range(gr.P))
            for a, b in zip(cls, cls[1:] + cls[:1]):
                perm[a] = b
            out.append(tuple(perm))
    return out


@dataclass
class _Partial:
    anchors: Tuple[Tuple[int, int], ...]  # (point, slot role)
    blocks: Tuple[Block, ...]
    cov: list
    gens: list


def classify_seeds(t: AutType, n: int) -> List[SeedClass]:
    """One SeedClass per isomorphism class of seeds of type t."""
    gr = _Grower(t, n)
    g = gr.g
    nu = n - 1
    slot_u, slot_v1, slot_v2 = t.anchor_schema

    def kind_ok(x, want):
        return (g[x] == x) == (want == FIXED)

    def grow(parts: List[_Partial], role: int, candidates) -> List[_Partial]:
        """Add one anchor and saturate it, one block orbit per layer.

        Every layer is reduced to one partial seed per isomorphism class;
        isomorphic partial seeds have isomorphic sets of completions.
        """
        layer: Dict[bytes, _Partial] = {}
        for part in parts:
            for x in candidates(part):
                anchors = part.anchors + ((x, role),)
                f, _, gens = gr.form(anchors, part.blocks)
                layer.setdefault(f, _Partial(anchors, part.blocks, part.cov, gens))
        done: List[_Partial] = []
        depth = 0
        while layer:
            nxt: Dict[bytes, _Partial] = {}
            for part in layer.values():
                x = part.anchors[-1][0]
                opts = gr.branch(x, part.cov)
                if opts is None:
                    continue
                if not opts:
                    done.append(part)
                    continue
                for orb in opts:
                    blocks = part.blocks + orb
                    f, _, gens = gr.form(part.anchors, blocks)
                    if f not in nxt:
                        nxt[f] = _Partial(part.anchors, blocks, gr._cover(part.cov, orb), gens)
            depth += 1
            log.debug("type %s slot %d layer %d: %d partial seeds", t, role, depth, len(nxt))
            layer = nxt
        log.info("type %s: %d partial seeds after slot %d", t, len(done), role)
        return done

    start = [_Partial((), (), [0] * gr.P, _class_cyclers(gr))]

    def fresh(part, pool, want):
        pts = [x for x in pool if kind_ok(x, want) and x not in dict(part.anchors)]
        return _point_orbits(part.gens, pts)

    U, V = range(nu), range(nu, gr.P)
    if slot_u == ABSENT:
        parts = grow(start, 1, lambda part: fresh(part, V, slot_v1))
        parts = grow(parts, 2, lambda part: fresh(part, V, slot_v2))
    elif slot_v2 == ABSENT:
        parts = grow(start, 0, lambda part: fresh(part, U, slot_u))
        parts = grow(parts, 1, lambda part: fresh(part, V, slot_v1))
    else:
        parts = grow(start, 0, lambda part: fresh(part, U, slot_u))

        def v1_candidates(part):
            u = part.anchors[0][0]
            pts = []
            for a, b, c in part.blocks:
                if a != u:
                    continue
                for v, w in ((b, c), (c, b)):
                    if kind_ok(v, slot_v1) and kind_ok(w, slot_v2):
                        pts.append(v)
            return _point_orbits(part.gens, sorted(pts))

        parts = grow(parts, 1, v1_candidates)

        def v2_candidates(part):
            u, v = part.anchors[0][0], part.anchors[1][0]
            return [next(c if b == v else b for a, b, c in part.blocks if a == u and v in (b, c))]

        parts = grow(parts, 2, v2_candidates)

    # final reduction with T as an unordered set
    final: Dict[bytes, Tuple[Seed, int, list]] = {}
    for part in parts:
        anchors = tuple(sorted(x for x, _ in part.anchors))
        role_free = tuple((x, 0) for x in anchors)
        f, aut, gens = gr.form(role_free, part.blocks)
        seed = Seed(gr.group, anchors, tuple(sorted(part.blocks)))
        old = final.get(f)
        if old is None or seed.sort_key() < old[0].sort_key():
            final[f] = (seed, aut, gens)
    out = [SeedClass(s, aut, tuple(gens), f) for f, (s, aut, gens) in final.items()]
    out.sort(key=lambda c: c.representative.sort_key())
    log.info("type %s: %d seed classes", t, len(out))
    return out


def seed_form(seed: Seed, t: AutType) -> Tuple[bytes, int]:
    """Isomorphism-class form and |Aut| of an arbitrary seed of type t.

    The seed's group is conjugated onto the fixed representative first.
    """
    gr = _Grower(t, seed.n)
    gamma = conjugator(seed.group.generator, gr.g)
    anchors = tuple((gamma[x], 0) for x in seed.anchor)
    blocks = tuple(normalize_block(gamma[x] for x in b) for b in seed.blocks)
    f, aut, _ = gr.form(anchors, blocks)
    return f, aut


def conjugator(h: Perm, g: Perm) -> Perm:
    """Some gamma with gamma h gamma^-1 = g, mapping U to U; h and g of equal cycle type."""
    P = len(g)

    def cycles(a, pts):
        seen, fixed, cyc = set(), [], []
        for x in pts:
            if x in seen:
                continue
            c = [x]
            seen.add(x)
            y = a[x]
            while y != x:
                c.append(y)
                seen.add(y)
                y = a[y]
            (fixed if len(c) == 1 else cyc).append(c)
        return fixed, cyc

    nu = next(i for i in range(P) if 2 * i + 1 == P)  # n - 1
    gamma = [0] * P
    for pts in (range(nu), range(nu, P)):
        fh, ch = cycles(h, pts)
        fg, cg = cycles(g, pts)
        if len(fh) != len(fg) or len(ch) != len(cg):
            raise ValueError("permutations have different cycle types")
        for a, b in zip(fh, fg):
            gamma[a[0]] = b[0]
        for a, b in zip(ch, cg):
            for x, y in zip(a, b):
                gamma[x] = y
    return tuple(gamma)


def seed_aut_elements(sc: SeedClass) -> List[Perm]:
    return group_elements(sc.aut_generators, 2 * sc.representative.n - 1)


def apply_to_seed(gamma: Perm, seed: Seed) -> Seed:
    g = compose(gamma, compose(seed.group.generator, inverse(gamma)))
    grp = PrimeGroup(seed.n, seed.group.p, g, seed.group.f_U, seed.group.f_V)
    return Seed(grp, tuple(sorted(gamma[x] for x in seed.anchor)),
                tuple(sorted(normalize_block(gamma[x] for x in b) for b in seed.blocks)))


def seed_from_factorization(blocks: Sequence[Block], group: PrimeGroup, anchor: Sequence[int]) -> Seed:
    """The seed (Pi, T, S) inside a factorization: S is every block orbit meeting T."""
    T = set(anchor)
    powers = [perm_power(group.generator, j) for j in range(group.p)]
    S = set()
    for b in blocks:
        if T & set(b):
            S.update(normalize_block(pw[x] for x in b) for pw in powers)
    return Seed(group, tuple(sorted(T)), tuple(sorted(S)))
