"""Pure-Python kernels: canonical labeling search and the dense level kernel.

This module and ``_ccore.pyx`` implement the same algorithms step for step;
both must return identical labelings, group orders and generators.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_INF = 1 << 30


def mix(h: int, x: int) -> int:
    return ((h ^ (x & MASK64)) * FNV_PRIME) & MASK64


def lexcmp(a: int, b: int) -> int:
    """Compare bit strings read from bit 0 upward; a 0 beats a 1."""
    x = a ^ b
    if not x:
        return 0
    return 1 if a & (x & -x) else -1


def vertex_invariants(m, nbrs, adj):
    """Degree plus the sorted common-neighbour counts along each edge."""
    inv = []
    for v in range(m):
        av = adj[v]
        cs = sorted(bin(av & adj[w]).count("1") for w in nbrs[v])
        h = mix(FNV_OFFSET, len(cs))
        for c in cs:
            h = mix(h, c)
        inv.append(h)
    return inv


class _Search:
    def __init__(self, m, nbrs, cells):
        self.m = m
        self.nbrs = nbrs
        self.cells = cells
        self.adj = [0] * m
        for v in range(m):
            a = 0
            for w in nbrs[v]:
                a |= 1 << w
            self.adj[v] = a
        self.cnt = [0] * m
        self.inq = [False] * m
        self.gens = []
        self.aut_order = 1
        self.first_lab = None
        self.path = []

    # -- partition refinement ---------------------------------------------

    def _split(self, lab, pos, cstart, clen, c, keys, h, queue):
        """Split cell c by ``keys[v]``; returns (trace, number of new cells)."""
        Lc = clen[c]
        seg = lab[c:c + Lc]
        k0 = keys[seg[0]]
        for v in seg:
            if keys[v] != k0:
                break
        else:
            return h, 0
        seg.sort(key=keys.__getitem__)
        lab[c:c + Lc] = seg
        frags = []
        i = 0
        while i < Lc:
            key = keys[seg[i]]
            j = i + 1
            while j < Lc and keys[seg[j]] == key:
                j += 1
            frags.append((c + i, j - i, key))
            i = j
        for f, fl, _ in frags:
            clen[f] = fl
            for p in range(f, f + fl):
                cstart[p] = f
                pos[lab[p]] = p
        h = mix(mix(h, c), len(frags))
        for _, fl, key in frags:
            h = mix(mix(h, key), fl)
        if queue is not None:
            inq = self.inq
            if inq[c]:
                for f, _, _ in frags[1:]:
                    queue.append(f)
                    inq[f] = True
            else:
                big = 0
                for idx in range(1, len(frags)):
                    if frags[idx][1] > frags[big][1]:
                        big = idx
                for idx, (f, _, _) in enumerate(frags):
                    if idx != big:
                        queue.append(f)
                        inq[f] = True
        return h, len(frags) - 1

    def _refine(self, st, queue, h):
        lab, pos, cstart, clen = st[0], st[1], st[2], st[3]
        ncells = st[4]
        m = self.m
        nbrs = self.nbrs
        cnt = self.cnt
        inq = self.inq
        for s in queue:
            inq[s] = True
        qi = 0
        while qi < len(queue) and ncells < m:
            s = queue[qi]
            qi += 1
            inq[s] = False
            touched = []
            for x in lab[s:s + clen[s]]:
                for y in nbrs[x]:
                    if cnt[y] == 0:
                        touched.append(y)
                    cnt[y] += 1
            starts = sorted({cstart[pos[y]] for y in touched})
            for c in starts:
                if clen[c] > 1:
                    h, extra = self._split(lab, pos, cstart, clen, c, cnt, h, queue)
                    ncells += extra
            for y in touched:
                cnt[y] = 0
        for s in queue[qi:]:
            inq[s] = False
        st[4] = ncells
        return h

    # -- search tree --------------------------------------------------------

    def run(self):
        m = self.m
        lab = [v for cell in self.cells for v in cell]
        pos = [0] * m
        cstart = [0] * m
        clen = [0] * m
        p = 0
        for cell in self.cells:
            for q in range(p, p + len(cell)):
                pos[lab[q]] = q
                cstart[q] = p
            clen[p] = len(cell)
            p += len(cell)
        st = [lab, pos, cstart, clen, len(self.cells)]
        h = FNV_OFFSET
        inv = vertex_invariants(m, self.nbrs, self.adj)
        c = 0
        while c < m:
            nxt = c + clen[c]
            if clen[c] > 1:
                h, extra = self._split(lab, pos, cstart, clen, c, inv, h, None)
                st[4] += extra
            c = nxt
        queue = []
        c = 0
        while c < m:
            queue.append(c)
            c += clen[c]
        h = self._refine(st, queue, h)
        self.path = [h]
        self._node(st, 0, [], True, True)
        return self.best_lab, self.aut_order, self.gens

    def _target(self, clen):
        best = -1
        bl = self.m + 1
        c = 0
        m = self.m
        while c < m:
            L = clen[c]
            if 1 < L < bl:
                best, bl = c, L
                if L == 2:
                    break
            c += L
        return best

    def _orbit_roots(self, prefix):
        m = self.m
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.gens:
            if all(g[x] == x for x in prefix):
                for v in range(m):
                    a, b = find(v), find(g[v])
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
        return [find(v) for v in range(m)]

    def _cmp_best(self):
        bt = self.best_trace
        for i, x in enumerate(self.path):
            if i >= len(bt):
                return 1
            if x != bt[i]:
                return -1 if x < bt[i] else 1
        return 0

    def _node(self, st, depth, prefix, onfirst, eqf):
        m = self.m
        if st[4] == m:
            return self._leaf(st[0], prefix, eqf)
        clen = st[3]
        t = self._target(clen)
        cell = sorted(st[0][t:t + clen[t]])
        explored = []
        roots = None
        ngens = -1
        d1 = depth + 1
        for v in cell:
            if explored:
                if ngens != len(self.gens):
                    roots = self._orbit_roots(prefix)
                    ngens = len(self.gens)
                rv = roots[v]
                if any(roots[w] == rv for w in explored):
                    continue
            explored.append(v)
            lab, pos, cstart, clen0 = st[0][:], st[1][:], st[2][:], st[3][:]
            # individualize v: move it to the front of its cell
            i = pos[v]
            u = lab[t]
            lab[t], lab[i] = v, u
            pos[v], pos[u] = t, i
            L = clen0[t]
            clen0[t] = 1
            clen0[t + 1] = L - 1
            for q in range(t + 1, t + L):
                cstart[q] = t + 1
            child = [lab, pos, cstart, clen0, st[4] + 1]
            h = self._refine(child, [t], mix(FNV_OFFSET, t))
            self.path.append(h)
            cfirst = onfirst and len(explored) == 1
            if self.first_lab is None:
                r = self._node(child, d1, prefix + [v], cfirst, True)
            else:
                ft = self.first_trace
                e1 = eqf and d1 < len(ft) and h == ft[d1]
                if not e1 and self._cmp_best() > 0:
                    self.path.pop()
                    continue
                r = self._node(child, d1, prefix + [v], cfirst, e1)
            self.path.pop()
            if r < depth:
                return r
        if onfirst:
            roots = self._orbit_roots(prefix)
            rv = roots[explored[0]]
            self.aut_order *= sum(1 for w in range(m) if roots[w] == rv)
        return _INF

    def _cert(self, lab):
        m = self.m
        pos = [0] * m
        for i, v in enumerate(lab):
            pos[v] = i
        nbrs = self.nbrs
        c = 0
        for i in range(m):
            base = i * m - i * (i + 1) // 2 - i - 1
            for w in nbrs[lab[i]]:
                j = pos[w]
                if j > i:
                    c |= 1 << (base + j)
        return c

    def _add_gen(self, src, dst):
        g = [0] * self.m
        for a, b in zip(src, dst):
            g[a] = b
        self.gens.append(g)

    def _leaf(self, lab, prefix, eqf):
        cert = self._cert(lab)
        if self.first_lab is None:
            self.first_lab = self.best_lab = lab[:]
            self.first_cert = self.best_cert = cert
            self.first_trace = self.best_trace = self.path[:]
            self.first_prefix = self.best_prefix = prefix[:]
            return _INF
        if eqf and cert == self.first_cert:
            self._add_gen(self.first_lab, lab)
            return _common(prefix, self.first_prefix)
        cb = self._cmp_best()
        if cb == 0:
            c = lexcmp(cert, self.best_cert)
            if c == 0:
                self._add_gen(self.best_lab, lab)
                return _common(prefix, self.best_prefix)
        if cb < 0 or (cb == 0 and c < 0):
            self.best_lab = lab[:]
            self.best_cert = cert
            self.best_trace = self.path[:]
            self.best_prefix = prefix[:]
        return _INF


def _common(a, b):
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def canon_search(m, nbrs, cells):
    """Canonical labeling of a vertex-coloured graph.

    ``nbrs`` are adjacency lists, ``cells`` the initial ordered partition
    (colour classes in colour order).  Returns ``(lab, aut_order, gens)``
    where ``lab[i]`` is the vertex receiving canonical label ``i``.
    """
    if m == 0:
        return [], 1, []
    s = _Search(m, [list(x) for x in nbrs], [list(c) for c in cells if c])
    return s.run()


def cert_bits(m, nbrs, lab):
    """Upper-triangle bitmask of the graph relabelled by ``lab``."""
    s = _Search.__new__(_Search)
    s.m = m
    s.nbrs = nbrs
    return _Search._cert(s, lab)


# -- dense kernel for the level pipeline ----------------------------------

def _rows_nbrs(n, rows):
    out = []
    for v in range(n):
        r = rows[v]
        out.append([w for w in range(n) if r >> w & 1])
    return out


def canon_dense(n, rows):
    """Canonical 16-byte form, group order and labeling of a plain graph."""
    nbrs = _rows_nbrs(n, rows)
    lab, aut, _ = canon_search(n, nbrs, [list(range(n))])
    return cert_bits(n, nbrs, lab).to_bytes(16, "little"), aut, lab


def _matchings(n, rows, free, out, acc):
    if not free:
        acc.append(list(out))
        return
    v = (free & -free).bit_length() - 1
    cand = rows[v] & free
    while cand:
        low = cand & -cand
        cand ^= low
        w = low.bit_length() - 1
        out.append((v, w))
        _matchings(n, rows, free & ~(1 << v) & ~low, out, acc)
        out.pop()


def dense_extensions(n, rows, mode):
    """Tally the classes reached from one level representative.

    mode 0 (forward): every perfect matching F of the complement, graph
    rows + F.  mode 1 (recursion check): every perfect matching F of the
    graph through its smallest edge, graph rows - F.
    Returns ``{form16: [multiplicity, aut_order]}``.
    """
    full = (1 << n) - 1
    acc = []
    if mode == 0:
        comp = [full & ~rows[v] & ~(1 << v) for v in range(n)]
        _matchings(n, comp, full, [], acc)
    else:
        a = next(v for v in range(n) if rows[v])
        b = (rows[a] & -rows[a]).bit_length() - 1
        _matchings(n, rows, full & ~(1 << a) & ~(1 << b), [(a, b)], acc)
    out = {}
    for m in acc:
        g = list(rows)
        for a, b in m:
            g[a] ^= 1 << b
            g[b] ^= 1 << a
        form, aut, _ = canon_dense(n, g)
        rec = out.get(form)
        if rec is None:
            out[form] = [1, aut]
        else:
            rec[0] += 1
    return out
