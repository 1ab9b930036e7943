"""Maker strategies: danger-driven easing and the games built on top of it."""

from __future__ import annotations

import math

import numpy as np

from ._kernels import berge_search
from .berge import MAX_BERGE_N, components, edge_masks, is_berge_hamiltonian
from .board import AFamily, Board, GameState, sample_available_edges, sample_available_incident_edge
from .engine import MakerMove
from .errors import InvalidParameters, SizeLimitExceeded, StrategyFailure


class DangerTracker:
    """Breaker degree and easing counts per play vertex.

    danger(v) = d_B(v) - k*b*d_plus(v); a vertex is dangerous while it has
    been eased fewer than ``m`` times.
    """

    def __init__(self, n_vertices: int, m: int, k: int, b: int, alpha: float, cap: int):
        if not 0 < alpha < 1:
            raise InvalidParameters("alpha must lie in (0, 1)")
        self.m = int(m)
        self.k = int(k)
        self.b = int(b)
        self.alpha = float(alpha)
        self.cap = int(cap)
        self.d_B = np.zeros(n_vertices, dtype=np.int64)
        self.d_plus = np.zeros(n_vertices, dtype=np.int64)
        # easings where fewer than (1-alpha)*cap incident edges were free
        self.availability_violations = 0
        self.min_available = None

    @classmethod
    def for_board(cls, board: Board, m: int, b: int, alpha: float) -> "DangerTracker":
        return cls(board.n_play, m, board.arity, b, alpha, board.cap)

    def danger(self) -> np.ndarray:
        return self.d_B - self.k * self.b * self.d_plus

    def dangerous(self) -> np.ndarray:
        return self.d_plus < self.m

    def finished(self) -> bool:
        return bool((self.d_plus >= self.m).all())

    def on_breaker_edges(self, members: np.ndarray) -> None:
        """Count every (vertex, edge) incidence of Breaker's new edges."""
        members = np.asarray(members, dtype=np.int64)
        if members.size:
            np.add.at(self.d_B, members.ravel(), 1)

    def most_dangerous(self) -> int:
        mask = self.dangerous()
        if not mask.any():
            raise StrategyFailure("no dangerous vertex left")
        d = np.where(mask, self.danger(), np.iinfo(np.int64).min)
        return int(np.argmax(d))   # first maximum, i.e. smallest index


def danger_move(state: GameState, tracker: DangerTracker, board: Board,
                rng: np.random.Generator) -> tuple[int, int]:
    """Ease the dangerous vertex of maximum danger with a uniformly random
    free incident edge.  Returns (eased vertex, board edge index)."""
    v = tracker.most_dangerous()
    free = int(state.avail[v])
    if tracker.min_available is None or free < tracker.min_available:
        tracker.min_available = free
    if free < (1 - tracker.alpha) * tracker.cap:
        tracker.availability_violations += 1
    e = sample_available_incident_edge(board, state, v, rng)
    if e is None:
        raise StrategyFailure(f"no free edge at vertex {v} (danger {int(tracker.danger()[v])})")
    tracker.d_plus[v] += 1
    return v, e


class DangerMaker:
    """Minimum-degree Maker; halts once every vertex was eased ``m`` times."""

    name = "danger"

    def __init__(self, board: Board, b: int, m: int, alpha: float = 0.9, phase: str = "degree"):
        self.board = board
        self.tracker = DangerTracker.for_board(board, m, b, alpha)
        self.phase = phase

    def move(self, state, rng):
        if self.tracker.finished():
            return None
        v, e = danger_move(state, self.tracker, self.board, rng)
        return MakerMove(e, self.phase, eased=v)

    def on_breaker(self, state, edges):
        self.tracker.on_breaker_edges(self.board.members[edges])


def rank_phase2_rounds(n: int) -> int:
    return math.ceil(n * max(1.0, math.log(math.log(n)))) if n > 2 else n


class RankMaker:
    """Phase 1: minimum-degree game with constant m.  Phase 2: uniformly
    random free edges for ceil(n log log n) rounds."""

    name = "rank"

    def __init__(self, board: Board, b: int, m: int = 20, alpha: float = 0.9,
                 phase2_rounds: int | None = None):
        self.board = board
        self.tracker = DangerTracker.for_board(board, m, b, alpha)
        self.phase2_rounds = rank_phase2_rounds(board.n) if phase2_rounds is None else phase2_rounds
        self.phase2_played = 0

    @property
    def phase(self) -> str:
        return "degree" if not self.tracker.finished() else "random"

    def move(self, state, rng):
        return rank_maker_move(state, self, self.tracker, self.board, rng)

    def on_breaker(self, state, edges):
        self.tracker.on_breaker_edges(self.board.members[edges])


def rank_maker_move(state: GameState, phase: RankMaker, tracker: DangerTracker, board: Board,
                    rng: np.random.Generator) -> MakerMove | None:
    if not tracker.finished():
        v, e = danger_move(state, tracker, board, rng)
        return MakerMove(e, "degree", eased=v)
    if phase.phase2_played >= phase.phase2_rounds:
        return None
    pick = sample_available_edges(state, 1, rng)
    if pick.size == 0:
        raise StrategyFailure("board exhausted in phase 2")
    phase.phase2_played += 1
    return MakerMove(int(pick[0]), "random")


# ----------------------------------------------------------------- BHC game

MIN_DEGREE, CONNECT, BOOST = "degree", "connect", "boost"


def maker_hypergraph(state: GameState) -> list[tuple[int, ...]]:
    return [state.board.edge_vertices(e) for e in state.maker]


def fast_boosters(H: list[tuple[int, ...]], n: int, board: Board, state: GameState,
                  base: int | None = None) -> tuple[np.ndarray, bool]:
    """Free boosters of H, via good vertex pairs.

    A free edge e is a booster iff it contains a pair {u, w} such that H plus
    the 2-set {u, w} has a Berge path longer than H (or is Hamiltonian when H
    has a Hamilton path): the longer structure must use e for exactly one
    consecutive pair.  Testing each pair once replaces a search per edge.
    Returns (board indices, H already Hamiltonian).
    """
    if n > MAX_BERGE_N:
        raise SizeLimitExceeded(f"booster search limited to n <= {MAX_BERGE_N}")
    if is_berge_hamiltonian(H, n) is not None:
        return np.empty(0, dtype=np.int64), True
    masks = edge_masks(H)
    if base is None:
        base, _, _ = berge_search(n, masks, cycle=False)
    free = state.free_indices()
    members = board.labels[free]
    good = np.zeros((n, n), dtype=bool)
    tested = np.zeros((n, n), dtype=bool)
    is_booster = np.zeros(free.size, dtype=bool)
    k = members.shape[1]
    for a in range(k):
        for c in range(a + 1, k):
            for u, w in np.unique(members[:, [a, c]], axis=0):
                if tested[u, w]:
                    continue
                tested[u, w] = True
                extra = np.append(masks, np.int64((1 << int(u)) | (1 << int(w))))
                if base >= n:
                    ok = berge_search(n, extra, cycle=True)[0] == n
                else:
                    ok = berge_search(n, extra, cycle=False, stop_at=base + 1)[0] > base
                good[u, w] = ok
            is_booster |= good[members[:, a], members[:, c]]
    return free[is_booster], False


class BhcMaker:
    """Minimum-degree phase, then connect the components, then boost."""

    name = "bhc"

    def __init__(self, board: Board, b: int, m: int = 20, eps: float = 0.1):
        if board.kind != "complete":
            raise InvalidParameters("the BHC strategy plays on the complete hypergraph")
        self.board = board
        self.tracker = DangerTracker.for_board(board, m, b, 1 - eps)
        self.phase = MIN_DEGREE
        self.boost_log: list[tuple[int, int, int]] = []   # (path length before, edge, Maker edges before)
        self.failure_state = None

    def _advance_phase(self, state):
        if self.phase == MIN_DEGREE and self.tracker.finished():
            self.phase = CONNECT
        if self.phase == CONNECT:
            labels = components(maker_hypergraph(state), self.board.n)
            if len(set(labels)) == 1:
                self.phase = BOOST
            return labels
        return None

    def move(self, state, rng):
        labels = self._advance_phase(state)
        if self.phase == MIN_DEGREE:
            v, e = danger_move(state, self.tracker, self.board, rng)
            return MakerMove(e, MIN_DEGREE, eased=v)
        if self.phase == CONNECT:
            free = state.free_indices()
            lab = np.asarray(labels)[self.board.labels[free]]
            crossing = free[(lab != lab[:, :1]).any(axis=1)]
            if crossing.size == 0:
                self.failure_state = list(state.maker)
                raise StrategyFailure("no free edge joins two components")
            return MakerMove(int(crossing[rng.integers(crossing.size)]), CONNECT)
        H = maker_hypergraph(state)
        base = berge_search(self.board.n, edge_masks(H), cycle=False)[0]
        cands, ham = fast_boosters(H, self.board.n, self.board, state, base)
        if ham:
            return None
        if cands.size == 0:
            self.failure_state = list(state.maker)
            raise StrategyFailure("no free booster")
        e = int(cands[rng.integers(cands.size)])
        self.boost_log.append((base, e, len(state.maker)))
        return MakerMove(e, BOOST)

    def on_breaker(self, state, edges):
        self.tracker.on_breaker_edges(self.board.members[edges])


def bhc_maker_move(state: GameState, phase_ctl: BhcMaker, board: Board,
                   rng: np.random.Generator) -> MakerMove | None:
    return phase_ctl.move(state, rng)


# ------------------------------------------------------- l-cycle / rainbow

class LCycleMaker:
    """Minimum-degree game on the bipartite board with m=10, alpha=1/11.

    The board edge (A_i, w) stands for the hypergraph edge A_i + {w}; with
    ``rainbow`` the edge is coloured by the position of w in B.
    """

    name = "lcycle"

    def __init__(self, board: Board, family: AFamily, b: int, m: int = 10,
                 alpha: float = 1 / 11, rainbow: bool = False):
        if board.kind != "lcycle":
            raise InvalidParameters("l-cycle strategy needs the restricted board")
        self.board = board
        self.family = family
        self.tracker = DangerTracker.for_board(board, m, b, alpha)
        self.rainbow = rainbow

    def move(self, state, rng):
        if self.tracker.finished():
            return None
        mv = lcycle_maker_move(state, self.tracker, self.board, self.family, rng)
        if not self.rainbow:
            mv.color = None
        return mv

    def on_breaker(self, state, edges):
        self.tracker.on_breaker_edges(self.board.members[edges])


def lcycle_color(board: Board, family: AFamily, edge: int) -> int:
    """Colour index j where B[j] = n - D + j is the B-vertex of the edge."""
    return int(edge) % family.D


def lcycle_maker_move(state: GameState, tracker: DangerTracker, board: Board, family: AFamily,
                      rng: np.random.Generator) -> MakerMove:
    v, e = danger_move(state, tracker, board, rng)
    return MakerMove(e, "lcycle", eased=v, color=lcycle_color(board, family, e))
