"""Incidence-matrix rank over GF(2).

Rows are vertices, columns are edges.  Two independent routes:

* :func:`gf2_rank` packs the rows into uint64 words and runs row
  elimination (compiled kernel);
* :class:`GF2Basis` streams columns into an echelon basis held as Python int
  bitsets, one column per Maker move.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ._kernels import gf2_rank_words


def incidence_matrix(edges: Iterable[Sequence[int]], n: int) -> np.ndarray:
    """Dense n x m 0/1 incidence matrix."""
    edges = [tuple(e) for e in edges]
    A = np.zeros((n, len(edges)), dtype=np.uint8)
    for j, e in enumerate(edges):
        A[list(e), j] = 1
    return A


def packed_rows(edges: Iterable[Sequence[int]], n: int) -> np.ndarray:
    edges = [tuple(e) for e in edges]
    W = max(1, -(-len(edges) // 64))
    words = np.zeros((n, W), dtype=np.uint64)
    for j, e in enumerate(edges):
        w, b = divmod(j, 64)
        bit = np.uint64(1) << np.uint64(b)
        for v in e:
            words[v, w] |= bit
    return words


def gf2_rank(edges: Iterable[Sequence[int]], n: int) -> int:
    """Rank of the incidence matrix of ``edges`` on ``n`` vertices."""
    edges = list(edges)
    if not edges:
        return 0
    return gf2_rank_words(packed_rows(edges, n))


class GF2Basis:
    """Column space of the incidence matrix, grown one edge at a time."""

    def __init__(self, n: int):
        self.n = n
        self._pivots: dict[int, int] = {}   # leading bit -> reduced column

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: int) -> int:
        while vec:
            top = vec.bit_length() - 1
            p = self._pivots.get(top)
            if p is None:
                return vec
            vec ^= p
        return 0

    def add(self, edge: Iterable[int]) -> bool:
        """Insert a column; True if it raised the rank."""
        vec = 0
        for v in edge:
            vec |= 1 << int(v)
        vec = self.reduce(vec)
        if vec:
            self._pivots[vec.bit_length() - 1] = vec
            return True
        return False

    def extend(self, edges: Iterable[Iterable[int]]) -> int:
        for e in edges:
            self.add(e)
        return self.rank


def find_dependency(edges: Iterable[Sequence[int]], n: int) -> frozenset[int] | None:
    """A nonempty set of rows summing to zero, or None when rank is n.

    Row elimination with a record of which original rows were combined; the
    first row that reduces to zero yields the dependency.
    """
    edges = [tuple(e) for e in edges]
    rows = [0] * n
    for j, e in enumerate(edges):
        for v in e:
            rows[v] |= 1 << j
    pivots: dict[int, tuple[int, int]] = {}   # leading column -> (row bits, combo)
    for i in range(n):
        vec, combo = rows[i], 1 << i
        while vec:
            top = vec.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                break
            vec ^= hit[0]
            combo ^= hit[1]
        if vec == 0:
            return frozenset(v for v in range(n) if (combo >> v) & 1)
        pivots[vec.bit_length() - 1] = (vec, combo)
    return None
