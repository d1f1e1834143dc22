"""Labeled one-factorization counts LF(G) for all regular graphs on n vertices.

Levels are built bottom-up.  Level k holds one record per isomorphism
class of one-factorizable k-regular graphs, keyed by the 16-byte canonical
form.  A level is produced from level k-1 by pushing, for each class H and
each one-factor F of the complement of H, a contribution to the class of
H + F (forward accumulation).

Accumulation is done in integers.  For a pair (H, F) landing in class G
the textbook increment is |Aut G| / |Aut H| * LF(H), which is in general
a fraction.  Multiplying through by n!/|Aut G| gives the integer
increment (n!/|Aut H|) * LF(H), the same for every F of a given H.  After
all pairs are visited, the accumulator times |Aut G|/n! is exactly
k * LF(G); both divisions are checked.
"""
from __future__ import annotations

import logging
import math
import zlib
from array import array
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional

from . import _backend
from .graphcore import form_to_rows

log = logging.getLogger(__name__)

PUBLISHED_CLASS_COUNTS = {
    14: (1, 1, 4, 504, 87977, 3459360, 21609293, 21609301, 3459386, 88193, 540, 13, 1, 1),
}

_EMPTY = 0


class DivisibilityError(ArithmeticError):
    """An accumulator failed an exact-division check."""


@dataclass
class ClassRecord:
    canonical_form: bytes
    accumulator: int
    aut_order: int


def complement_rows(n: int, rows: List[int]) -> List[int]:
    full = (1 << n) - 1
    return [full & ~rows[v] & ~(1 << v) for v in range(n)]


class LevelStore:
    """Open-addressing hash table of class records for one level.

    Slots hold a 4-byte hash of the form and the index of the record;
    collisions are resolved by linear probing.  The table doubles when it
    is more than 70% full, or can be sized up front from a known count.

    ``state`` is "accumulating" while contributions arrive, "complete"
    once accumulators equal k*LF(G), and "final" once they equal LF(G).
    """

    def __init__(self, n: int, k: int, capacity: Optional[int] = None):
        self.n = n
        self.k = k
        if capacity is None:
            counts = PUBLISHED_CLASS_COUNTS.get(n)
            capacity = counts[k] if counts and k < len(counts) else 16
        size = 16
        while size * 7 < capacity * 10:
            size *= 2
        self._alloc(size)
        self.forms: List[bytes] = []
        self.acc: List[int] = []
        self.aut: List[int] = []
        self.state = "accumulating"

    def _alloc(self, size: int) -> None:
        self._mask = size - 1
        self._hash = array("I", bytes(4 * size))
        self._slot = array("q", bytes(8 * size))  # record index + 1; 0 = empty

    def _grow(self) -> None:
        size = (self._mask + 1) * 2
        self._alloc(size)
        for i, f in enumerate(self.forms):
            h = zlib.crc32(f)
            s = h & self._mask
            while self._slot[s] != _EMPTY:
                s = (s + 1) & self._mask
            self._hash[s] = h
            self._slot[s] = i + 1

    def _find(self, form: bytes, h: int) -> int:
        """Slot holding ``form``, or the empty slot where it would go."""
        s = h & self._mask
        slot = self._slot
        hs = self._hash
        forms = self.forms
        while True:
            r = slot[s]
            if r == _EMPTY or (hs[s] == h and forms[r - 1] == form):
                return s
            s = (s + 1) & self._mask

    def index(self, form: bytes) -> int:
        """Record index of ``form`` or -1."""
        return self._slot[self._find(form, zlib.crc32(form))] - 1

    def add(self, form: bytes, amount: int, aut_order: int) -> None:
        h = zlib.crc32(form)
        s = self._find(form, h)
        r = self._slot[s]
        if r != _EMPTY:
            self.acc[r - 1] += amount
            return
        if (len(self.forms) + 1) * 10 > (self._mask + 1) * 7:
            self._grow()
            s = self._find(form, h)
        self.forms.append(form)
        self.acc.append(amount)
        self.aut.append(aut_order)
        self._hash[s] = h
        self._slot[s] = len(self.forms)

    def get(self, form: bytes) -> Optional[ClassRecord]:
        i = self.index(form)
        if i < 0:
            return None
        return ClassRecord(form, self.acc[i], self.aut[i])

    def lf(self, form: bytes) -> int:
        """Finalized LF of the class, 0 for graphs not in the level."""
        if self.state != "final":
            raise RuntimeError("level is not finalized")
        i = self.index(form)
        return self.acc[i] if i >= 0 else 0

    def __len__(self) -> int:
        return len(self.forms)

    def __contains__(self, form: bytes) -> bool:
        return self.index(form) >= 0

    def __iter__(self) -> Iterator[ClassRecord]:
        for f, a, g in zip(self.forms, self.acc, self.aut):
            yield ClassRecord(f, a, g)

    def sorted_records(self) -> List[ClassRecord]:
        return sorted(self, key=lambda r: r.canonical_form)

    def complete(self) -> None:
        """Turn weighted sums into k*LF(G)."""
        if self.state != "accumulating":
            raise RuntimeError(f"cannot complete a level in state {self.state}")
        nf = math.factorial(self.n)
        for i in range(len(self.acc)):
            q, r = divmod(self.acc[i] * self.aut[i], nf)
            if r:
                raise DivisibilityError(f"weighted sum not a multiple of n! for {self.forms[i].hex()}")
            self.acc[i] = q
        self.state = "complete"

    def finalize(self) -> None:
        """Divide every k*LF(G) by k."""
        if self.state != "complete":
            raise RuntimeError(f"cannot finalize a level in state {self.state}")
        if self.k > 1:
            for i in range(len(self.acc)):
                q, r = divmod(self.acc[i], self.k)
                if r:
                    raise DivisibilityError(
                        f"accumulator {self.acc[i]} not divisible by k={self.k} for {self.forms[i].hex()}")
                self.acc[i] = q
        self.state = "final"

    @classmethod
    def from_records(cls, n: int, k: int, records: Iterable, state: str = "final") -> "LevelStore":
        """Build a store from (form, value, aut_order) triples."""
        records = list(records)
        st = cls(n, k, capacity=len(records))
        for form, value, aut in records:
            if form in st:
                raise ValueError(f"duplicate form {form.hex()}")
            st.add(form, value, aut)
        st.state = state
        return st


def base_level(n: int) -> LevelStore:
    """The single 0-regular class; LF of the empty graph is 1."""
    st = LevelStore(n, 0, capacity=1)
    form, aut, _ = _backend.canon_dense(n, [0] * n)
    st.add(form, 1, aut)
    st.state = "final"
    return st


def _forward_chunk(args):
    n, items = args
    nf = math.factorial(n)
    out: Dict[bytes, list] = {}
    for form, lf, aut in items:
        w = nf // aut * lf
        for g, (mult, gaut) in _backend.dense_extensions(n, form_to_rows(n, form), 0).items():
            rec = out.get(g)
            if rec is None:
                out[g] = [mult * w, gaut]
            else:
                rec[0] += mult * w
    return out


def _chunks(items: list, parts: int) -> List[list]:
    size = max(1, -(-len(items) // max(1, parts)))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _run_parallel(fn, n, items, threads):
    if threads <= 1 or len(items) < 2:
        return [fn((n, items))]
    import multiprocessing as mp
    with mp.get_context("fork").Pool(threads) as pool:
        return pool.map(fn, [(n, c) for c in _chunks(items, threads * 8)])


def forward_accumulate_level(prev: LevelStore, threads: int = 1) -> LevelStore:
    """Level k from the finalized level k-1; the result is in state "complete"."""
    if prev.state != "final":
        raise RuntimeError("previous level must be finalized")
    n, k = prev.n, prev.k + 1
    if k > n - 1:
        raise ValueError("no level above n-1")
    items = list(zip(prev.forms, prev.acc, prev.aut))
    st = LevelStore(n, k)
    for part in _run_parallel(_forward_chunk, n, items, threads):
        for g, (w, gaut) in part.items():
            st.add(g, w, gaut)
    st.complete()
    return st


def build_levels(n: int, top: Optional[int] = None, threads: int = 1, on_level=None) -> List[LevelStore]:
    """Finalized levels 0..top (default n-1).

    ``on_level(store)`` is called for every finished level, e.g. to flush
    it to disk; only the returned list keeps levels alive.
    """
    if n % 2 or n < 2:
        raise ValueError("n must be even and at least 2")
    top = n - 1 if top is None else top
    levels = [base_level(n)]
    if on_level:
        on_level(levels[0])
    for k in range(1, top + 1):
        st = forward_accumulate_level(levels[-1], threads)
        st.finalize()
        log.info("n=%d k=%d classes=%d", n, k, len(st))
        levels.append(st)
        if on_level:
            on_level(st)
    return levels


def _dgm_chunk(args):
    n, (items, prev) = args
    bad = []
    for form, lf, _ in items:
        total = 0
        for h, (mult, _aut) in _backend.dense_extensions(n, form_to_rows(n, form), 1).items():
            total += mult * prev.get(h, 0)
        if total != lf:
            bad.append(form)
    return bad


def dgm_mismatches(level_k: LevelStore, level_km1: LevelStore, threads: int = 1) -> List[bytes]:
    """Forms whose stored LF disagrees with the fixed-edge recursion."""
    if level_k.state != "final" or level_km1.state != "final":
        raise RuntimeError("levels must be finalized")
    if level_k.k != level_km1.k + 1 or level_k.n != level_km1.n:
        raise ValueError("levels are not consecutive")
    n = level_k.n
    if level_k.k == 0:
        return []
    prev = dict(zip(level_km1.forms, level_km1.acc))
    items = list(zip(level_k.forms, level_k.acc, level_k.aut))
    if threads <= 1:
        return _dgm_chunk((n, (items, prev)))
    import multiprocessing as mp
    with mp.get_context("fork").Pool(threads) as pool:
        parts = pool.map(_dgm_chunk, [(n, (c, prev)) for c in _chunks(items, threads * 8)])
    return [f for p in parts for f in p]


def verify_dgm_level(level_k: LevelStore, level_km1: LevelStore, threads: int = 1) -> bool:
    bad = dgm_mismatches(level_k, level_km1, threads)
    for f in bad[:10]:
        log.error("recursion mismatch at level %d for form %s", level_k.k, f.hex())
    return not bad


def verify_mitm(n: int, k: int, levels) -> int:
    """Right-hand side of the meet-in-the-middle identity at degree k."""
    lk, lc = levels[k], levels[n - 1 - k]
    nf = math.factorial(n)
    total = 0
    for rec in lk:
        comp = complement_rows(n, form_to_rows(n, rec.canonical_form))
        cform = _backend.canon_dense(n, comp)[0]
        total += nf // rec.aut_order * rec.accumulator * lc.lf(cform)
    b = math.comb(n - 1, k)
    q, r = divmod(total, b)
    if r:
        raise DivisibilityError(f"sum at k={k} not divisible by C({n - 1},{k})")
    return q


def distinct_factorization_table(n: int, levels) -> List[int]:
    """Entry k: labeled one-factorizations of k-regular graphs on n fixed vertices."""
    nf = math.factorial(n)
    return [sum(nf // r.aut_order * r.accumulator for r in lv) for lv in levels]


def labeled_graph_count(level: LevelStore) -> int:
    """Number of labeled graphs represented by the classes of a level."""
    nf = math.factorial(level.n)
    return sum(nf // a for a in level.aut)
