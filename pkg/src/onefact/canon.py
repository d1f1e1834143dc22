"""Canonical labeling and automorphism groups of small vertex-coloured graphs.

The search itself lives in the backend kernels (compiled or pure Python);
this module wraps it in value types and fixes the byte layout of forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence

from . import _backend
from .graphcore import DenseGraph

FORM16_MAX = 16  # plain graphs up to this size get the bare 16-byte form


@dataclass(frozen=True)
class ColoredGraph:
    """Simple graph with adjacency bitmask rows and a colour per vertex.

    Colours must cover a contiguous range 0..c-1.  There is no upper bound
    on ``m``; incidence graphs of one-factorizations reach a few hundred
    vertices.
    """
    m: int
    adjacency: tuple
    colors: tuple

    def __init__(self, m: int, adjacency: Sequence[int], colors: Sequence[int] = None):
        adjacency = tuple(int(r) for r in adjacency)
        colors = tuple(colors) if colors is not None else (0,) * m
        if len(adjacency) != m or len(colors) != m:
            raise ValueError("adjacency and colours must have m entries")
        for v, r in enumerate(adjacency):
            if r >> m or r >> v & 1:
                raise ValueError(f"bad adjacency row {v}")
            w = r
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not adjacency[u] >> v & 1:
                    raise ValueError("adjacency is not symmetric")
                w ^= low
        if colors and sorted(set(colors)) != list(range(max(colors) + 1)):
            raise ValueError("colours must form a contiguous range from 0")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "colors", colors)

    @classmethod
    def from_edges(cls, m: int, edges, colors=None) -> "ColoredGraph":
        rows = [0] * m
        for a, b in edges:
            if a == b:
                raise ValueError("loops are not allowed")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(m, rows, colors)

    @classmethod
    def from_dense(cls, g: DenseGraph) -> "ColoredGraph":
        return cls(g.n, g.rows())

    def neighbours(self) -> List[List[int]]:
        out = []
        for r in self.adjacency:
            lst = []
            while r:
                low = r & -r
                lst.append(low.bit_length() - 1)
                r ^= low
            out.append(lst)
        return out

    def num_colors(self) -> int:
        return max(self.colors) + 1 if self.m else 0

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Image under ``v -> perm[v]``."""
        m = self.m
        rows = [0] * m
        cols = [0] * m
        for v in range(m):
            r = self.adjacency[v]
            img = 0
            while r:
                low = r & -r
                img |= 1 << perm[low.bit_length() - 1]
                r ^= low
            rows[perm[v]] = img
            cols[perm[v]] = self.colors[v]
        return ColoredGraph(m, rows, cols)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        return all(self.colors[perm[v]] == self.colors[v] for v in range(self.m)) \
            and self.relabel(perm).adjacency == self.adjacency


@dataclass(frozen=True)
class CanonicalResult:
    canonical_labeling: tuple   # canonical_labeling[v] is the new label of v
    canonical_form: bytes
    aut_order: int
    aut_generators: list = field(default_factory=list)


def _cells(g: ColoredGraph):
    cells = [[] for _ in range(g.num_colors())]
    for v, c in enumerate(g.colors):
        cells[c].append(v)
    return cells


def serialize_form(m: int, color_counts: Sequence[int], cert: int) -> bytes:
    """Byte form of a canonically labelled graph.

    One colour and m <= 16: the upper-triangle bits, 16 bytes little-endian.
    Otherwise a header (m as u16, colour count as u16, each class size as
    u16) followed by the upper-triangle bits padded to whole bytes.
    """
    if len(color_counts) <= 1 and m <= FORM16_MAX:
        return cert.to_bytes(16, "little")
    nbits = m * (m - 1) // 2
    head = m.to_bytes(2, "little") + len(color_counts).to_bytes(2, "little")
    head += b"".join(c.to_bytes(2, "little") for c in color_counts)
    return head + cert.to_bytes((nbits + 7) // 8, "little")


def canonicalize(g: ColoredGraph) -> CanonicalResult:
    m = g.m
    nbrs = g.neighbours()
    cells = _cells(g)
    lab, aut, gens = _backend.canon_search(m, nbrs, cells)
    cert = _backend.cert_bits(m, nbrs, lab)
    labeling = [0] * m
    for i, v in enumerate(lab):
        labeling[v] = i
    form = serialize_form(m, [len(c) for c in cells], cert)
    return CanonicalResult(tuple(labeling), form, aut, [tuple(x) for x in gens])


def canonicalize_lists(m: int, nbrs: Sequence[Sequence[int]], colors: Sequence[int]) -> CanonicalResult:
    """``canonicalize`` for trusted input given as neighbour lists.

    Colours may be any sortable keys; classes are ordered by key.
    """
    keys = sorted(set(colors))
    idx = {c: i for i, c in enumerate(keys)}
    cells = [[] for _ in keys]
    for v, c in enumerate(colors):
        cells[idx[c]].append(v)
    lab, aut, gens = _backend.canon_search(m, nbrs, cells)
    cert = _backend.cert_bits(m, nbrs, lab)
    labeling = [0] * m
    for i, v in enumerate(lab):
        labeling[v] = i
    form = serialize_form(m, [len(c) for c in cells], cert)
    return CanonicalResult(tuple(labeling), form, aut, [tuple(x) for x in gens])


def canonical_form_dense(g: DenseGraph) -> bytes:
    """16-byte canonical form of a plain graph."""
    return _backend.canon_dense(g.n, g.rows())[0]


def aut_order_graph(g: DenseGraph) -> int:
    return _backend.canon_dense(g.n, g.rows())[1]
