"""Berge paths and cycles, boosters and expansion on small hypergraphs.

All searches here are exact and exponential; they refuse n > 12 (expansion
allows exhaustive checks up to n = 14, and has a sampled mode beyond).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import berge_search, expander_violation
from .errors import SizeLimitExceeded

MAX_BERGE_N = 12
MAX_EXPANDER_N = 14


def edge_masks(edges: Iterable[Sequence[int]]) -> np.ndarray:
    out = []
    for e in edges:
        m = 0
        for v in e:
            m |= 1 << int(v)
        out.append(m)
    return np.array(out, dtype=np.int64)


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def _check_size(n: int, limit: int = MAX_BERGE_N):
    if n > limit:
        raise SizeLimitExceeded(f"exact Berge search limited to n <= {limit}, got n={n}")


@dataclass(frozen=True)
class BergeCertificate:
    """Cyclic vertex order with the distinct edge used for each consecutive pair."""

    order: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]

    def is_valid(self, n: int, available: Iterable[Sequence[int]] | None = None) -> bool:
        if sorted(self.order) != list(range(n)) or len(self.edges) != n:
            return False
        if len(set(self.edges)) != n:
            return False
        for i, e in enumerate(self.edges):
            if self.order[i] not in e or self.order[(i + 1) % n] not in e:
                return False
        if available is not None:
            pool = {tuple(sorted(x)) for x in available}
            if any(tuple(sorted(e)) not in pool for e in self.edges):
                return False
        return True

    def to_json(self) -> dict:
        return {"type": "berge", "order": list(self.order), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, d: dict) -> "BergeCertificate":
        return cls(tuple(d["order"]), tuple(tuple(e) for e in d["edges"]))


@dataclass(frozen=True)
class BergePath:
    order: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]

    def is_valid(self) -> bool:
        if len(set(self.order)) != len(self.order) or len(self.edges) != max(len(self.order) - 1, 0):
            return False
        if len(set(self.edges)) != len(self.edges):
            return False
        return all(self.order[i] in e and self.order[i + 1] in e for i, e in enumerate(self.edges))


def longest_berge_path(edges: Sequence[Sequence[int]], n: int) -> tuple[int, BergePath]:
    """Most vertices on a Berge path (1 for an edgeless hypergraph)."""
    _check_size(n)
    edges = [tuple(sorted(e)) for e in edges]
    if n == 0:
        return 0, BergePath((), ())
    length, seq, eidx = berge_search(n, edge_masks(edges), cycle=False)
    return length, BergePath(tuple(int(v) for v in seq), tuple(edges[i] for i in eidx))


def is_berge_hamiltonian(edges: Sequence[Sequence[int]], n: int) -> BergeCertificate | None:
    _check_size(n)
    edges = [tuple(sorted(e)) for e in edges]
    if n < 2 or len(edges) < n:
        return None
    masks = edge_masks(edges)
    deg = np.zeros(n, dtype=np.int64)
    for e in edges:
        deg[list(e)] += 1
    if deg.min() < 2:
        return None
    length, seq, eidx = berge_search(n, masks, cycle=True)
    if length != n:
        return None
    return BergeCertificate(tuple(int(v) for v in seq), tuple(edges[i] for i in eidx))


@dataclass(frozen=True)
class BoosterResult:
    edges: frozenset[int]       # board indices
    hamiltonian: bool


def boosters(H: Sequence[Sequence[int]], board, state) -> BoosterResult:
    """Available edges e with a longer Berge path in H + e, or making H + e
    Hamiltonian.  Full recomputation for every candidate edge."""
    n = board.n
    _check_size(n)
    H = [tuple(sorted(e)) for e in H]
    if is_berge_hamiltonian(H, n) is not None:
        return BoosterResult(frozenset(), True)
    base, _ = longest_berge_path(H, n)
    out = set()
    for e in state.free_indices().tolist():
        He = H + [board.edge_vertices(e)]
        if longest_berge_path(He, n)[0] > base or is_berge_hamiltonian(He, n) is not None:
            out.add(e)
    return BoosterResult(frozenset(out), False)


@dataclass(frozen=True)
class ExpanderResult:
    ok: bool
    witness: tuple[frozenset[int], frozenset[int]] | None
    exhaustive: bool

    def __bool__(self):
        return self.ok


def is_expander(edges: Sequence[Sequence[int]], n: int, r: int, alpha: float,
                mode: str = "auto", rng: np.random.Generator | None = None,
                samples: int = 20_000) -> ExpanderResult:
    """(r, alpha)-expansion: every X with |X| <= r and disjoint Y with
    |Y| < alpha|X| leaves an edge meeting X exactly once and missing Y.

    Exhaustive for n <= 14.  The sampled mode only ever reports "no violation
    found" and says so through ``exhaustive=False``.
    """
    if mode == "auto":
        mode = "exhaustive" if n <= MAX_EXPANDER_N else "sampled"
    masks = edge_masks(edges)
    if mode == "exhaustive":
        _check_size(n, MAX_EXPANDER_N)
        hit = expander_violation(n, masks, r, alpha)
        if hit is None:
            return ExpanderResult(True, None, True)
        return ExpanderResult(False, (_mask_to_set(hit[0]), _mask_to_set(hit[1])), True)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    rng = rng or np.random.default_rng(0)
    verts = np.arange(n)
    edge_sets = [frozenset(int(v) for v in e) for e in edges]
    for _ in range(samples):
        x = int(rng.integers(1, r + 1))
        X = frozenset(rng.choice(verts, size=x, replace=False).tolist())
        rest = np.array([v for v in range(n) if v not in X])
        y = min(max(int(np.ceil(alpha * x)) - 1, 0), rest.size)
        Y = frozenset(rng.choice(rest, size=y, replace=False).tolist()) if y else frozenset()
        if violates_expansion(edge_sets, X, Y):
            return ExpanderResult(False, (X, Y), False)
    return ExpanderResult(True, None, False)


def violates_expansion(edges: Iterable[frozenset[int] | Sequence[int]], X, Y) -> bool:
    """True iff no edge meets X in exactly one vertex while avoiding Y."""
    X = set(X)
    Y = set(Y)
    if X & Y:
        raise ValueError("X and Y must be disjoint")
    for e in edges:
        e = set(e)
        if len(e & X) == 1 and not (e & Y):
            return False
    return True


def components(edges: Iterable[Sequence[int]], n: int) -> list[int]:
    """Component label per vertex (union-find); isolated vertices are their own."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        it = iter(e)
        a = find(int(next(it)))
        for v in it:
            b = find(int(v))
            if a != b:
                parent[b] = a
    return [find(v) for v in range(n)]


def pair_subsets(edge: Sequence[int]):
    return itertools.combinations(sorted(edge), 2)
