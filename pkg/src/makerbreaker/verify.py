"""Exact verifiers and certificates for the target properties."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .berge import (BergeCertificate, BergePath, BoosterResult, ExpanderResult, boosters,
                    is_berge_hamiltonian, is_expander, longest_berge_path)
from .board import GameState, a_family
from .errors import InvalidParameters, MakerBreakerError
from .gf2 import GF2Basis, find_dependency, gf2_rank
from .matching import hall_violator, max_matching, matching_size

__all__ = [
    "BergeCertificate", "BergePath", "BoosterResult", "ExpanderResult", "GF2Basis",
    "LCycleCertificate", "boosters", "find_dependency", "gf2_rank", "hall_violator",
    "is_berge_hamiltonian", "is_expander", "longest_berge_path", "max_matching",
    "min_degree", "verify_lcycle", "verify_rainbow", "verify_record",
]


def min_degree(edges_or_state, n: int | None = None) -> int:
    """Minimum Maker degree (hypergraph vertices) of a state or an edge list."""
    if isinstance(edges_or_state, GameState):
        state = edges_or_state
        n = state.board.n if n is None else n
        edges = [state.board.edge_vertices(e) for e in state.maker]
    else:
        edges = edges_or_state
    deg = np.zeros(n, dtype=np.int64)
    for e in edges:
        deg[list(e)] += 1
    return int(deg.min()) if n else 0


@dataclass(frozen=True)
class LCycleCertificate:
    """Vertex order plus edges; edge i is the k consecutive vertices starting
    at position (k-l)*i, read cyclically."""

    order: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...]
    l: int

    def is_valid(self, n: int, k: int, pool: Iterable[Sequence[int]] | None = None) -> bool:
        l = self.l
        if sorted(self.order) != list(range(n)) or (k - l) <= 0 or n % (k - l):
            return False
        count = n // (k - l)
        if len(self.edges) != count or len(set(self.edges)) != count:
            return False
        for i, e in enumerate(self.edges):
            window = {self.order[((k - l) * i + t) % n] for t in range(k)}
            if window != set(e) or len(e) != k:
                return False
        if count > 1:
            for i in range(count):
                if len(set(self.edges[i]) & set(self.edges[(i + 1) % count])) != l and count > 2:
                    return False
        if l == 0:
            covered = [v for e in self.edges for v in e]
            if sorted(covered) != list(range(n)):
                return False
        if pool is not None:
            allowed = {tuple(sorted(x)) for x in pool}
            if any(tuple(sorted(e)) not in allowed for e in self.edges):
                return False
        return True

    def to_json(self) -> dict:
        return {"type": "lcycle", "l": self.l, "order": list(self.order),
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, d: dict) -> "LCycleCertificate":
        return cls(tuple(d["order"]), tuple(tuple(e) for e in d["edges"]), int(d["l"]))


def _restricted_split(edges, fam):
    """Map each edge to (i, j) with edge = A_i + {B[j]}; None if any edge is not of that form."""
    index_a = {frozenset(a): i for i, a in enumerate(fam.sets)}
    b_pos = {v: j for j, v in enumerate(fam.B)}
    out = []
    for e in edges:
        bs = [v for v in e if v in b_pos]
        rest = frozenset(v for v in e if v not in b_pos)
        if len(bs) != 1 or rest not in index_a:
            return None
        out.append((index_a[rest], b_pos[bs[0]]))
    return out


def _order_from_matching(fam, phi: Sequence[int]) -> tuple[list[int], list[tuple[int, ...]]]:
    D, l = fam.D, fam.l
    seq: list[int] = []
    for i in range(D):
        prev, cur, nxt = set(fam.sets[i - 1]), set(fam.sets[i]), set(fam.sets[(i + 1) % D])
        shared = sorted(prev & cur) if l else []
        private = sorted(cur - prev - nxt) if l else sorted(cur)
        seq.extend(shared + private + [fam.B[phi[i]]])
    edges = [tuple(sorted(fam.sets[i] + (fam.B[phi[i]],))) for i in range(D)]
    return seq, edges


def _exact_cover(edges: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]] | None:
    by_vertex: dict[int, list[tuple[int, ...]]] = {v: [] for v in range(n)}
    for e in set(edges):
        by_vertex[min(e)].append(e)
    chosen: list[tuple[int, ...]] = []

    def rec(covered: int) -> bool:
        if covered == (1 << n) - 1:
            return True
        v = next(i for i in range(n) if not (covered >> i) & 1)
        for e in by_vertex[v]:
            m = sum(1 << x for x in e)
            if not covered & m:
                chosen.append(e)
                if rec(covered | m):
                    return True
                chosen.pop()
        return False

    return list(chosen) if rec(0) else None


def verify_lcycle(edges: Iterable[Sequence[int]], n: int, k: int, l: int) -> LCycleCertificate | None:
    """Certificate for a Hamilton l-cycle inside ``edges``, or None.

    Edges from the restricted board are decided through a perfect matching
    of the A-sets into B.  Arbitrary edge sets are only handled for l = 0
    (perfect matchings) with n <= 15.
    """
    edges = [tuple(sorted(int(v) for v in e)) for e in edges]
    fam = a_family(n, k, l)
    split = _restricted_split(edges, fam)
    if split is not None:
        adj = [[] for _ in range(fam.D)]
        for i, j in split:
            adj[i].append(j)
        match = max_matching(fam.D, fam.D, adj)
        if matching_size(match) < fam.D:
            return None
        seq, cyc = _order_from_matching(fam, match)
        cert = LCycleCertificate(tuple(seq), tuple(cyc), l)
        return cert if cert.is_valid(n, k, edges) else None
    if l != 0 or n > 15:
        raise InvalidParameters("edges are not from the restricted board; "
                                "general verification only for l=0 and n<=15")
    if any(len(e) != k or max(e) >= n for e in edges):
        raise InvalidParameters("edges must be k-sets of [0, n)")
    cover = _exact_cover(edges, n)
    if cover is None:
        return None
    cover.sort()
    seq = [v for e in cover for v in e]
    cert = LCycleCertificate(tuple(seq), tuple(cover), 0)
    return cert if cert.is_valid(n, k, edges) else None


def verify_rainbow(record) -> bool:
    """True iff the certificate edges carry pairwise distinct Maker colours."""
    cert = record.certificate if not isinstance(record, dict) else record.get("certificate")
    if not cert or not cert.get("edges"):
        return True
    moves = record.moves if not isinstance(record, dict) else None
    colour: dict[tuple[int, ...], int] = {}
    if moves is not None:
        for mv in moves:
            if mv.player == "M" and mv.color is not None:
                colour[record.board.edge_vertices(mv.edges[0])] = mv.color
    else:
        for mv in record["moves"]:
            if mv["player"] == "M" and mv.get("color") is not None:
                colour[tuple(mv["edges"][0])] = mv["color"]
    seen = set()
    for e in cert["edges"]:
        c = colour.get(tuple(sorted(e)))
        if c is None or c in seen:
            return False
        seen.add(c)
    return True


def verify_record(record) -> list[str]:
    """Replay a GameRecord and re-check its certificate; returns the problems found."""
    from .engine import MAKER_WIN, replay

    problems = []
    try:
        state = replay(record)
    except MakerBreakerError as exc:
        return [f"replay failed: {exc}"]
    board = record.board
    H = [board.edge_vertices(e) for e in state.maker]
    cert = record.certificate
    if record.outcome == MAKER_WIN and cert is None:
        problems.append("MakerWin without a certificate")
    if not cert:
        return problems
    kind = cert.get("type")
    if kind == "berge":
        if not BergeCertificate.from_json(cert).is_valid(board.n, H):
            problems.append("Berge certificate does not verify")
    elif kind == "lcycle":
        if not LCycleCertificate.from_json(cert).is_valid(board.n, board.k, H):
            problems.append("l-cycle certificate does not verify")
        if "colors" in cert and not verify_rainbow(record):
            problems.append("rainbow certificate repeats a colour")
    elif kind == "rank":
        r = gf2_rank(H, board.n)
        if r != cert.get("rank") or r < cert.get("target", r):
            problems.append(f"rank certificate says {cert.get('rank')}, recomputed {r}")
    elif kind == "min_degree":
        if min_degree(H, board.n) < cert.get("m", 0):
            problems.append("minimum degree below m")
    else:
        problems.append(f"unknown certificate type {kind!r}")
    return problems
