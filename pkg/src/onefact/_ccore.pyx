# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: canonical labeling search and the dense level kernel.

Line-for-line port of ``_pycore``; results must be identical.
"""
from libc.stdlib cimport malloc, free, realloc
from libc.string cimport memcpy, memset
from libc.stdint cimport uint64_t, uint32_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctz(unsigned int) nogil

cdef uint64_t FNV_OFFSET = 0xCBF29CE484222325
cdef uint64_t FNV_PRIME = 0x100000001B3
cdef int INF = 1 << 30


cdef inline uint64_t mix(uint64_t h, uint64_t x) nogil:
    return (h ^ x) * FNV_PRIME


cdef inline int popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef void stable_sort(int *a, int n, uint64_t *keys, int *tmp) nogil:
    cdef int i, j, v, width, lo, mid, hi, p, q, k
    cdef uint64_t kv
    cdef int *src
    cdef int *dst
    cdef int *sw
    if n <= 24:
        for i in range(1, n):
            v = a[i]
            kv = keys[v]
            j = i - 1
            while j >= 0 and keys[a[j]] > kv:
                a[j + 1] = a[j]
                j -= 1
            a[j + 1] = v
        return
    src = a
    dst = tmp
    width = 1
    while width < n:
        lo = 0
        while lo < n:
            mid = lo + width
            if mid > n:
                mid = n
            hi = lo + 2 * width
            if hi > n:
                hi = n
            p = lo
            q = mid
            k = lo
            while p < mid and q < hi:
                if keys[src[q]] < keys[src[p]]:
                    dst[k] = src[q]
                    q += 1
                else:
                    dst[k] = src[p]
                    p += 1
                k += 1
            while p < mid:
                dst[k] = src[p]
                p += 1
                k += 1
            while q < hi:
                dst[k] = src[q]
                q += 1
                k += 1
            lo = hi
        sw = src
        src = dst
        dst = sw
        width *= 2
    if src != a:
        memcpy(a, src, n * sizeof(int))


cdef void int_sort(int *a, int n) nogil:
    cdef int i, j, v
    for i in range(1, n):
        v = a[i]
        j = i - 1
        while j >= 0 and a[j] > v:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = v


cdef class Canonizer:
    cdef int m, nw, mcap, nbcap
    cdef int *nbstart
    cdef int *nblist
    cdef uint64_t *adjbits
    cdef int *stk
    cdef int *ncells
    cdef int *cellbuf
    cdef int *explbuf
    cdef int *rootbuf
    cdef uint64_t *cnt
    cdef uint64_t *inv
    cdef char *inq
    cdef int *touched
    cdef int *queue
    cdef int qcap
    cdef int *starts
    cdef char *mark
    cdef int *tmp
    cdef int *tmp2
    cdef int *parent
    cdef uint64_t *path
    cdef uint64_t *first_trace
    cdef uint64_t *best_trace
    cdef int first_len, best_len
    cdef int *first_lab
    cdef int *best_lab
    cdef int *prefix
    cdef int *first_prefix
    cdef int *best_prefix
    cdef int first_plen, best_plen
    cdef uint64_t *cert_cur
    cdef uint64_t *cert_first
    cdef uint64_t *cert_best
    cdef int have_first
    cdef int *gens
    cdef int ngens, gcap
    cdef object aut_order

    def __cinit__(self, int mcap):
        if mcap < 1:
            mcap = 1
        self.mcap = mcap
        cdef int nw = (mcap + 63) // 64
        self.nbcap = 0
        self.nblist = NULL
        self.nbstart = <int *> malloc((mcap + 1) * sizeof(int))
        self.adjbits = <uint64_t *> malloc(mcap * nw * sizeof(uint64_t))
        self.stk = <int *> malloc((mcap + 2) * 4 * mcap * sizeof(int))
        self.ncells = <int *> malloc((mcap + 2) * sizeof(int))
        self.cellbuf = <int *> malloc((mcap + 2) * mcap * sizeof(int))
        self.explbuf = <int *> malloc((mcap + 2) * mcap * sizeof(int))
        self.rootbuf = <int *> malloc((mcap + 2) * mcap * sizeof(int))
        self.cnt = <uint64_t *> malloc(mcap * sizeof(uint64_t))
        self.inv = <uint64_t *> malloc(mcap * sizeof(uint64_t))
        self.inq = <char *> malloc(mcap * sizeof(char))
        self.touched = <int *> malloc(mcap * sizeof(int))
        self.qcap = 4 * mcap + 8
        self.queue = <int *> malloc(self.qcap * sizeof(int))
        self.starts = <int *> malloc(mcap * sizeof(int))
        self.mark = <char *> malloc(mcap * sizeof(char))
        self.tmp = <int *> malloc(mcap * sizeof(int))
        self.tmp2 = <int *> malloc(mcap * sizeof(int))
        self.parent = <int *> malloc(mcap * sizeof(int))
        self.path = <uint64_t *> malloc((mcap + 2) * sizeof(uint64_t))
        self.first_trace = <uint64_t *> malloc((mcap + 2) * sizeof(uint64_t))
        self.best_trace = <uint64_t *> malloc((mcap + 2) * sizeof(uint64_t))
        self.first_lab = <int *> malloc(mcap * sizeof(int))
        self.best_lab = <int *> malloc(mcap * sizeof(int))
        self.prefix = <int *> malloc((mcap + 2) * sizeof(int))
        self.first_prefix = <int *> malloc((mcap + 2) * sizeof(int))
        self.best_prefix = <int *> malloc((mcap + 2) * sizeof(int))
        self.cert_cur = <uint64_t *> malloc(mcap * nw * sizeof(uint64_t))
        self.cert_first = <uint64_t *> malloc(mcap * nw * sizeof(uint64_t))
        self.cert_best = <uint64_t *> malloc(mcap * nw * sizeof(uint64_t))
        self.gcap = 8
        self.gens = <int *> malloc(self.gcap * mcap * sizeof(int))
        memset(self.inq, 0, mcap)
        memset(self.mark, 0, mcap)
        memset(self.cnt, 0, mcap * sizeof(uint64_t))

    def __dealloc__(self):
        free(self.nbstart); free(self.nblist); free(self.adjbits); free(self.stk)
        free(self.ncells); free(self.cellbuf); free(self.explbuf); free(self.rootbuf)
        free(self.cnt); free(self.inv); free(self.inq); free(self.touched)
        free(self.queue); free(self.starts); free(self.mark); free(self.tmp)
        free(self.tmp2); free(self.parent); free(self.path); free(self.first_trace)
        free(self.best_trace); free(self.first_lab); free(self.best_lab)
        free(self.prefix); free(self.first_prefix); free(self.best_prefix)
        free(self.cert_cur); free(self.cert_first); free(self.cert_best); free(self.gens)

    # -- graph loading ----------------------------------------------------

    cdef void _ensure_nb(self, int total):
        if total > self.nbcap:
            self.nbcap = total + 16
            self.nblist = <int *> realloc(self.nblist, self.nbcap * sizeof(int))

    def load_lists(self, int m, nbrs):
        cdef int v, k, total = 0
        for v in range(m):
            total += len(nbrs[v])
        self._ensure_nb(total)
        self.m = m
        self.nw = (m + 63) // 64
        memset(self.adjbits, 0, m * self.nw * sizeof(uint64_t))
        k = 0
        for v in range(m):
            self.nbstart[v] = k
            for w in nbrs[v]:
                self.nblist[k] = w
                self.adjbits[v * self.nw + (<int> w >> 6)] |= (<uint64_t> 1) << (<int> w & 63)
                k += 1
        self.nbstart[m] = k

    cdef void load_rows(self, int n, uint32_t *rows):
        cdef int v, w, k = 0
        self._ensure_nb(n * n)
        self.m = n
        self.nw = 1
        for v in range(n):
            self.nbstart[v] = k
            self.adjbits[v] = rows[v]
            for w in range(n):
                if (rows[v] >> w) & 1:
                    self.nblist[k] = w
                    k += 1
        self.nbstart[n] = k

    # -- refinement -------------------------------------------------------

    cdef uint64_t split(self, int *lab, int *pos, int *cstart, int *clen, int c,
                        uint64_t *keys, uint64_t h, bint use_queue, int *qlen,
                        int *extra):
        cdef int Lc = clen[c]
        cdef int i, j, f, fl, nfr, big, bigl, p, idx
        cdef uint64_t k0 = keys[lab[c]]
        cdef uint64_t key
        cdef int *seg = lab + c
        extra[0] = 0
        for i in range(1, Lc):
            if keys[seg[i]] != k0:
                break
        else:
            return h
        stable_sort(seg, Lc, keys, self.tmp)
        # fragment starts collected in tmp2 (relative offsets)
        nfr = 0
        i = 0
        while i < Lc:
            key = keys[seg[i]]
            j = i + 1
            while j < Lc and keys[seg[j]] == key:
                j += 1
            self.tmp2[nfr] = i
            nfr += 1
            i = j
        for idx in range(nfr):
            f = c + self.tmp2[idx]
            if idx + 1 < nfr:
                fl = self.tmp2[idx + 1] - self.tmp2[idx]
            else:
                fl = Lc - self.tmp2[idx]
            clen[f] = fl
            for p in range(f, f + fl):
                cstart[p] = f
                pos[lab[p]] = p
        h = mix(mix(h, <uint64_t> c), <uint64_t> nfr)
        for idx in range(nfr):
            f = c + self.tmp2[idx]
            h = mix(mix(h, keys[lab[f]]), <uint64_t> clen[f])
        if use_queue:
            if self.inq[c]:
                for idx in range(1, nfr):
                    f = c + self.tmp2[idx]
                    self.queue[qlen[0]] = f
                    qlen[0] += 1
                    self.inq[f] = 1
            else:
                big = 0
                bigl = clen[c]
                for idx in range(1, nfr):
                    f = c + self.tmp2[idx]
                    if clen[f] > bigl:
                        big = idx
                        bigl = clen[f]
                for idx in range(nfr):
                    if idx != big:
                        f = c + self.tmp2[idx]
                        self.queue[qlen[0]] = f
                        qlen[0] += 1
                        self.inq[f] = 1
        extra[0] = nfr - 1
        return h

    cdef uint64_t refine(self, int *st, int *ncells, int qlen, uint64_t h):
        cdef int m = self.m
        cdef int *lab = st
        cdef int *pos = st + m
        cdef int *cstart = st + 2 * m
        cdef int *clen = st + 3 * m
        cdef int qi = 0, s, x, y, e, ntouch, nst, c, i, extra
        cdef int *queue = self.queue
        cdef uint64_t *cnt = self.cnt
        for i in range(qlen):
            self.inq[queue[i]] = 1
        while qi < qlen and ncells[0] < m:
            s = queue[qi]
            qi += 1
            self.inq[s] = 0
            ntouch = 0
            for i in range(s, s + clen[s]):
                x = lab[i]
                for e in range(self.nbstart[x], self.nbstart[x + 1]):
                    y = self.nblist[e]
                    if cnt[y] == 0:
                        self.touched[ntouch] = y
                        ntouch += 1
                    cnt[y] += 1
            nst = 0
            for i in range(ntouch):
                c = cstart[pos[self.touched[i]]]
                if not self.mark[c]:
                    self.mark[c] = 1
                    self.starts[nst] = c
                    nst += 1
            int_sort(self.starts, nst)
            for i in range(nst):
                c = self.starts[i]
                self.mark[c] = 0
            for i in range(nst):
                c = self.starts[i]
                if clen[c] > 1:
                    h = self.split(lab, pos, cstart, clen, c, cnt, h, True, &qlen, &extra)
                    ncells[0] += extra
            for i in range(ntouch):
                cnt[self.touched[i]] = 0
        while qi < qlen:
            self.inq[queue[qi]] = 0
            qi += 1
        return h

    # -- search -----------------------------------------------------------

    cdef int target(self, int *clen):
        cdef int best = -1, bl = self.m + 1, c = 0, L
        while c < self.m:
            L = clen[c]
            if 1 < L < bl:
                best = c
                bl = L
                if L == 2:
                    break
            c += L
        return best

    cdef int find(self, int x):
        cdef int *parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cdef void orbit_roots(self, int plen, int *roots):
        cdef int m = self.m, gi, v, a, b, k
        cdef int *g
        cdef bint ok
        for v in range(m):
            self.parent[v] = v
        for gi in range(self.ngens):
            g = self.gens + gi * m
            ok = True
            for k in range(plen):
                if g[self.prefix[k]] != self.prefix[k]:
                    ok = False
                    break
            if not ok:
                continue
            for v in range(m):
                a = self.find(v)
                b = self.find(g[v])
                if a != b:
                    if a < b:
                        self.parent[b] = a
                    else:
                        self.parent[a] = b
        for v in range(m):
            roots[v] = self.find(v)

    cdef int cmp_best(self, int plen):
        cdef int i
        for i in range(plen):
            if i >= self.best_len:
                return 1
            if self.path[i] != self.best_trace[i]:
                return -1 if self.path[i] < self.best_trace[i] else 1
        return 0

    cdef int certcmp(self, uint64_t *a, uint64_t *b):
        cdef int i, n = self.m * self.nw
        cdef uint64_t x
        for i in range(n):
            x = a[i] ^ b[i]
            if x:
                return 1 if a[i] & (x & (~x + 1)) else -1
        return 0

    cdef void add_gen(self, int *src, int *dst):
        cdef int m = self.m, i
        if self.ngens >= self.gcap:
            self.gcap *= 2
            self.gens = <int *> realloc(self.gens, self.gcap * self.mcap * sizeof(int))
        cdef int *g = self.gens + self.ngens * m
        for i in range(m):
            g[src[i]] = dst[i]
        self.ngens += 1

    cdef int common(self, int plen, int *other, int olen):
        cdef int k = 0
        while k < plen and k < olen and self.prefix[k] == other[k]:
            k += 1
        return k

    cdef int leaf(self, int depth, bint eqf):
        cdef int m = self.m, nw = self.nw, i, e, j, v
        cdef int *lab = self.stk + depth * 4 * m
        cdef int *pos = lab + m
        cdef uint64_t *cert = self.cert_cur
        cdef int cb, c = 0
        memset(cert, 0, m * nw * sizeof(uint64_t))
        for i in range(m):
            v = lab[i]
            for e in range(self.nbstart[v], self.nbstart[v + 1]):
                j = pos[self.nblist[e]]
                cert[i * nw + (j >> 6)] |= (<uint64_t> 1) << (j & 63)
        if not self.have_first:
            self.have_first = 1
            memcpy(self.first_lab, lab, m * sizeof(int))
            memcpy(self.best_lab, lab, m * sizeof(int))
            memcpy(self.cert_first, cert, m * nw * sizeof(uint64_t))
            memcpy(self.cert_best, cert, m * nw * sizeof(uint64_t))
            memcpy(self.first_trace, self.path, (depth + 1) * sizeof(uint64_t))
            memcpy(self.best_trace, self.path, (depth + 1) * sizeof(uint64_t))
            self.first_len = self.best_len = depth + 1
            memcpy(self.first_prefix, self.prefix, depth * sizeof(int))
            memcpy(self.best_prefix, self.prefix, depth * sizeof(int))
            self.first_plen = self.best_plen = depth
            return INF
        if eqf and self.certcmp(cert, self.cert_first) == 0:
            self.add_gen(self.first_lab, lab)
            return self.common(depth, self.first_prefix, self.first_plen)
        cb = self.cmp_best(depth + 1)
        if cb == 0:
            c = self.certcmp(cert, self.cert_best)
            if c == 0:
                self.add_gen(self.best_lab, lab)
                return self.common(depth, self.best_prefix, self.best_plen)
        if cb < 0 or (cb == 0 and c < 0):
            memcpy(self.best_lab, lab, m * sizeof(int))
            memcpy(self.cert_best, cert, m * nw * sizeof(uint64_t))
            memcpy(self.best_trace, self.path, (depth + 1) * sizeof(uint64_t))
            self.best_len = depth + 1
            memcpy(self.best_prefix, self.prefix, depth * sizeof(int))
            self.best_plen = depth
        return INF

    cdef int node(self, int depth, bint onfirst, bint eqf) except? -2:
        cdef int m = self.m
        cdef int *st = self.stk + depth * 4 * m
        cdef int *child
        cdef int *clen = st + 3 * m
        cdef int t, L, idx, v, nexpl = 0, ngseen = -1, k, r, i, u, q, size, rv
        cdef int *cell
        cdef int *expl
        cdef int *roots
        cdef bint pruned, cfirst, e1
        cdef uint64_t h
        if self.ncells[depth] == m:
            return self.leaf(depth, eqf)
        t = self.target(clen)
        L = clen[t]
        cell = self.cellbuf + depth * m
        expl = self.explbuf + depth * m
        roots = self.rootbuf + depth * m
        memcpy(cell, st + t, L * sizeof(int))
        int_sort(cell, L)
        for idx in range(L):
            v = cell[idx]
            if nexpl > 0:
                if ngseen != self.ngens:
                    self.orbit_roots(depth, roots)
                    ngseen = self.ngens
                rv = roots[v]
                pruned = False
                for k in range(nexpl):
                    if roots[expl[k]] == rv:
                        pruned = True
                        break
                if pruned:
                    continue
            expl[nexpl] = v
            nexpl += 1
            child = st + 4 * m
            memcpy(child, st, 4 * m * sizeof(int))
            # individualize v
            i = child[m + v]
            u = child[t]
            child[t] = v
            child[i] = u
            child[m + v] = t
            child[m + u] = i
            child[3 * m + t] = 1
            child[3 * m + t + 1] = L - 1
            for q in range(t + 1, t + L):
                child[2 * m + q] = t + 1
            self.ncells[depth + 1] = self.ncells[depth] + 1
            self.queue[0] = t
            h = self.refine(child, &self.ncells[depth + 1], 1, mix(FNV_OFFSET, <uint64_t> t))
            self.path[depth + 1] = h
            self.prefix[depth] = v
            cfirst = onfirst and nexpl == 1
            if not self.have_first:
                r = self.node(depth + 1, cfirst, True)
            else:
                e1 = eqf and depth + 1 < self.first_len and h == self.first_trace[depth + 1]
                if not e1 and self.cmp_best(depth + 2) > 0:
                    continue
                r = self.node(depth + 1, cfirst, e1)
            if r < depth:
                return r
        if onfirst:
            self.orbit_roots(depth, roots)
            rv = roots[expl[0]]
            size = 0
            for k in range(m):
                if roots[k] == rv:
                    size += 1
            self.aut_order = self.aut_order * size
        return INF

    cdef void start(self, cells):
        """Set up the root partition from a list of cells (Python objects)."""
        cdef int m = self.m, p = 0, q, v
        cdef int *lab = self.stk
        cdef int *pos = lab + m
        cdef int *cstart = lab + 2 * m
        cdef int *clen = lab + 3 * m
        cdef int nc = 0
        for cell in cells:
            L = len(cell)
            if L == 0:
                continue
            for q in range(L):
                v = cell[q]
                lab[p + q] = v
                pos[v] = p + q
                cstart[p + q] = p
            clen[p] = L
            p += L
            nc += 1
        self.ncells[0] = nc

    cdef void start_unit(self):
        cdef int m = self.m, q
        cdef int *lab = self.stk
        for q in range(m):
            lab[q] = q
            lab[m + q] = q
            lab[2 * m + q] = 0
        lab[3 * m] = m
        self.ncells[0] = 1

    cdef int run(self) except -1:
        cdef int m = self.m, nw = self.nw, v, e, w, i, j, d, c, nxt, extra, qlen
        cdef int *lab = self.stk
        cdef int *pos = lab + m
        cdef int *cstart = lab + 2 * m
        cdef int *clen = lab + 3 * m
        cdef uint64_t h = FNV_OFFSET, hv
        cdef int *cs = self.tmp
        self.ngens = 0
        self.have_first = 0
        self.aut_order = 1
        for v in range(m):
            d = 0
            for e in range(self.nbstart[v], self.nbstart[v + 1]):
                w = self.nblist[e]
                c = 0
                for i in range(nw):
                    c += popcount64(self.adjbits[v * nw + i] & self.adjbits[w * nw + i])
                cs[d] = c
                d += 1
            int_sort(cs, d)
            hv = mix(FNV_OFFSET, <uint64_t> d)
            for i in range(d):
                hv = mix(hv, <uint64_t> cs[i])
            self.inv[v] = hv
        c = 0
        while c < m:
            nxt = c + clen[c]
            if clen[c] > 1:
                h = self.split(lab, pos, cstart, clen, c, self.inv, h, False, &qlen, &extra)
                self.ncells[0] += extra
            c = nxt
        qlen = 0
        c = 0
        while c < m:
            self.queue[qlen] = c
            qlen += 1
            c += clen[c]
        h = self.refine(lab, &self.ncells[0], qlen, h)
        self.path[0] = h
        self.node(0, True, True)
        return 0

    cdef void form16(self, unsigned char *out):
        """Upper-triangle bits of the best certificate, 16 bytes little-endian."""
        cdef int m = self.m, i, j, b = 0
        cdef uint64_t lo = 0, hi = 0
        for i in range(m):
            for j in range(i + 1, m):
                if (self.cert_best[i] >> j) & 1:
                    if b < 64:
                        lo |= (<uint64_t> 1) << b
                    else:
                        hi |= (<uint64_t> 1) << (b - 64)
                b += 1
        for i in range(8):
            out[i] = (lo >> (8 * i)) & 0xFF
            out[8 + i] = (hi >> (8 * i)) & 0xFF

    def result(self):
        m = self.m
        lab = [self.best_lab[i] for i in range(m)]
        gens = [[self.gens[g * m + i] for i in range(m)] for g in range(self.ngens)]
        return lab, self.aut_order, gens


def canon_search(int m, nbrs, cells):
    if m == 0:
        return [], 1, []
    cdef Canonizer c = Canonizer(m)
    c.load_lists(m, nbrs)
    c.start(cells)
    c.run()
    return c.result()


def cert_bits(int m, nbrs, lab):
    pos = [0] * m
    for i, v in enumerate(lab):
        pos[v] = i
    cdef object cert = 0
    for i in range(m):
        base = i * m - i * (i + 1) // 2 - i - 1
        for w in nbrs[lab[i]]:
            j = pos[w]
            if j > i:
                cert |= 1 << (base + j)
    return cert


def canon_dense(int n, rows):
    cdef uint32_t crow[32]
    cdef unsigned char buf[16]
    cdef Canonizer c = Canonizer(n)
    for v in range(n):
        crow[v] = rows[v]
    c.load_rows(n, crow)
    c.start_unit()
    c.run()
    c.form16(buf)
    lab = [c.best_lab[i] for i in range(n)]
    return bytes(buf[:16]), c.aut_order, lab


cdef class _DenseWalker:
    cdef Canonizer canon
    cdef int n
    cdef uint32_t base[32]
    cdef uint32_t mrows[32]
    cdef uint32_t work[32]
    cdef int sign
    cdef int pa[16]
    cdef int pb[16]
    cdef int npairs
    cdef dict out

    def __cinit__(self, int n):
        self.canon = Canonizer(n)
        self.n = n
        self.out = {}

    cdef int visit(self) except -1:
        cdef int v, k
        cdef unsigned char buf[16]
        for v in range(self.n):
            self.work[v] = self.base[v]
        for k in range(self.npairs):
            self.work[self.pa[k]] ^= (<uint32_t> 1) << self.pb[k]
            self.work[self.pb[k]] ^= (<uint32_t> 1) << self.pa[k]
        self.canon.load_rows(self.n, self.work)
        self.canon.start_unit()
        self.canon.run()
        self.canon.form16(buf)
        key = bytes(buf[:16])
        rec = self.out.get(key)
        if rec is None:
            self.out[key] = [1, self.canon.aut_order]
        else:
            rec[0] += 1
        return 0

    cdef int rec(self, uint32_t free) except -1:
        cdef uint32_t cand, low
        cdef int v, w
        if free == 0:
            self.visit()
            return 0
        v = __builtin_ctz(free)
        cand = self.mrows[v] & free
        while cand:
            low = cand & (~cand + 1)
            cand ^= low
            w = __builtin_ctz(low)
            self.pa[self.npairs] = v
            self.pb[self.npairs] = w
            self.npairs += 1
            self.rec(free & ~((<uint32_t> 1) << v) & ~low)
            self.npairs -= 1
        return 0


def dense_extensions(int n, rows, int mode):
    cdef _DenseWalker w = _DenseWalker(n)
    cdef uint32_t full = ((<uint32_t> 1) << n) - 1
    cdef int v, a, b
    for v in range(n):
        w.base[v] = rows[v]
    w.npairs = 0
    if mode == 0:
        for v in range(n):
            w.mrows[v] = full & ~w.base[v] & ~((<uint32_t> 1) << v)
        w.rec(full)
    else:
        for v in range(n):
            w.mrows[v] = w.base[v]
        a = 0
        while a < n and w.base[a] == 0:
            a += 1
        if a == n:
            return {}
        b = __builtin_ctz(w.base[a])
        w.pa[0] = a
        w.pb[0] = b
        w.npairs = 1
        w.rec(full & ~((<uint32_t> 1) << a) & ~((<uint32_t> 1) << b))
    return w.out
