"""Alternating game loop, bias rules, transcripts and replay."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Protocol

import numpy as np

from .board import BREAKER, MAKER, Board, GameState, board_from_descriptor
from .errors import IllegalMove, InvalidEdge, RecordParseError, StrategyFailure

MAKER_WIN = "MakerWin"
BREAKER_WIN = "BreakerWin"
MOVE_LIMIT = "MoveLimit"
OUTCOMES = (MAKER_WIN, BREAKER_WIN, MOVE_LIMIT)


@dataclass(frozen=True)
class BiasSpec:
    """Explicit bias ``b``, or ``beta`` with b = max(1, floor(beta*N/ln n)),
    or ``rule="lcycle"`` for b = max(1, floor(n/(2k ln n)))."""

    b: int | None = None
    beta: float | None = None
    rule: str | None = None

    def __post_init__(self):
        given = sum(x is not None for x in (self.b, self.beta, self.rule))
        if given != 1:
            raise ValueError("give exactly one of b, beta, rule")
        if self.b is not None and self.b < 1:
            raise ValueError("bias must be at least 1")
        if self.rule not in (None, "lcycle"):
            raise ValueError(f"unknown bias rule {self.rule!r}")


def incident_capacity(n: int, k: int) -> int:
    """N = C(n-1, k-1), edges of the complete board through one vertex."""
    return math.comb(n - 1, k - 1)


def compute_bias(spec: BiasSpec, board: Board | None = None, *, n: int | None = None,
                 k: int | None = None) -> int:
    if spec.b is not None:
        return int(spec.b)
    n = board.n if board is not None else n
    k = board.k if board is not None else k
    if spec.rule == "lcycle":
        return max(1, math.floor(n / (2 * k * math.log(n))))
    return max(1, math.floor(spec.beta * incident_capacity(n, k) / math.log(n)))


@dataclass
class Move:
    player: str
    phase: str
    edges: list[int]                 # board indices
    eased: int | None = None
    color: int | None = None


@dataclass
class MakerMove:
    edge: int
    phase: str
    eased: int | None = None
    color: int | None = None


class MakerStrategy(Protocol):
    def move(self, state: GameState, rng: np.random.Generator) -> MakerMove | None: ...

    def on_breaker(self, state: GameState, edges: np.ndarray) -> None: ...


class BreakerStrategy(Protocol):
    def move(self, state: GameState, rng: np.random.Generator) -> tuple[np.ndarray, str]: ...


@dataclass
class GameRecord:
    board: Board
    bias: int
    seed: int
    moves: list[Move] = field(default_factory=list)
    outcome: str = MOVE_LIMIT
    certificate: dict | None = None
    failure: str | None = None
    # not serialised: first round at which the win condition held, and counters
    win_round: int | None = None
    stats: dict = field(default_factory=dict)

    @property
    def rounds(self) -> int:
        return sum(1 for mv in self.moves if mv.player == MAKER)

    def to_json(self) -> dict:
        moves = []
        for mv in self.moves:
            d = {"player": mv.player, "phase": mv.phase,
                 "edges": self.board.labels[mv.edges].tolist()}
            if mv.eased is not None:
                d["eased"] = int(mv.eased)
            if mv.color is not None:
                d["color"] = int(mv.color)
            moves.append(d)
        out = {"board": self.board.descriptor(), "bias": int(self.bias), "seed": int(self.seed),
               "moves": moves, "outcome": self.outcome}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.failure is not None:
            out["failure"] = self.failure
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, d: dict) -> "GameRecord":
        try:
            board = board_from_descriptor(d["board"])
            moves = []
            for mv in d["moves"]:
                if mv["player"] not in (MAKER, BREAKER):
                    raise RecordParseError(f"bad player {mv['player']!r}")
                moves.append(Move(mv["player"], str(mv.get("phase", "")),
                                  [board.index_of(e) for e in mv["edges"]],
                                  mv.get("eased"), mv.get("color")))
            outcome = d.get("outcome", MOVE_LIMIT)
            if outcome not in OUTCOMES:
                raise RecordParseError(f"bad outcome {outcome!r}")
            return cls(board, int(d["bias"]), int(d["seed"]), moves, outcome,
                       d.get("certificate"), d.get("failure"))
        except (KeyError, TypeError, InvalidEdge) as exc:
            raise RecordParseError(f"malformed game record: {exc}") from exc

    @classmethod
    def loads(cls, s: str) -> "GameRecord":
        try:
            return cls.from_json(json.loads(s))
        except json.JSONDecodeError as exc:
            raise RecordParseError(str(exc)) from exc


def replay(record: GameRecord) -> GameState:
    """Rebuild the final state from the transcript; illegal moves raise."""
    state = GameState(record.board, record.bias)
    for mv in record.moves:
        state.claim(mv.player, mv.edges)
        if mv.player == MAKER:
            state.round += 1
            if mv.color is not None:
                state.colors[mv.edges[0]] = mv.color
    return state


def _check_turn(state: GameState, before: tuple[int, int], player: str, count: int, b: int):
    nm, nb = len(state.maker), len(state.breaker)
    if nm + nb + state.n_free != state.board.n_edges:
        raise AssertionError("edge conservation violated")
    if player == MAKER and (nm - before[0] != 1 or nb != before[1]):
        raise AssertionError("Maker must add exactly one edge")
    if player == BREAKER and (nb - before[1] != count or count > b or nm != before[0]):
        raise AssertionError("Breaker added more than b edges")


def play_game(board: Board, maker: MakerStrategy, breaker: BreakerStrategy, bias: int,
              win_check: Callable[[GameState], bool],
              lose_check: Callable[[GameState], bool] | None = None,
              move_cap: int | None = None,
              rng: np.random.Generator | None = None,
              seed: int = 0,
              maker_first: bool = True,
              until_halt: bool = False,
              certificate: Callable[[GameState], dict | None] | None = None,
              check_invariants: bool = True) -> GameRecord:
    """Play one game.

    Each round Maker claims one edge and Breaker ``bias`` edges (Maker first
    unless ``maker_first`` is False).  The game stops at the first win
    (``until_halt=False``), a Breaker win, board exhaustion or ``move_cap``
    rounds.  With ``until_halt=True`` play continues after Maker's win until
    her strategy has nothing left to do; ``record.win_round`` keeps the round
    of the first win.
    """
    if bias < 1:
        raise ValueError("bias must be at least 1")
    rng = rng if rng is not None else np.random.default_rng(seed)
    move_cap = board.n_edges if move_cap is None else int(move_cap)
    state = GameState(board, bias)
    record = GameRecord(board, bias, seed)
    won = False
    outcome = None

    def maker_turn() -> bool:
        nonlocal won, outcome
        mv = maker.move(state, rng)
        if mv is None:
            outcome = MAKER_WIN if won else BREAKER_WIN
            record.stats["halted"] = True
            return False
        before = (len(state.maker), len(state.breaker))
        state.claim(MAKER, mv.edge)
        state.round += 1
        if mv.color is not None:
            state.colors[mv.edge] = mv.color
        if check_invariants:
            _check_turn(state, before, MAKER, 1, bias)
        record.moves.append(Move(MAKER, mv.phase, [int(mv.edge)], mv.eased, mv.color))
        if not won and win_check(state):
            won = True
            record.win_round = state.round
            if not until_halt:
                outcome = MAKER_WIN
                return False
        return True

    def breaker_turn() -> bool:
        nonlocal outcome
        edges, phase = breaker.move(state, rng)
        edges = np.asarray(edges, dtype=np.int64)
        if edges.size > bias:
            raise IllegalMove(BREAKER, f"claimed {edges.size} edges with bias {bias}")
        before = (len(state.maker), len(state.breaker))
        state.claim(BREAKER, edges)
        if check_invariants:
            _check_turn(state, before, BREAKER, edges.size, bias)
        maker.on_breaker(state, edges)
        record.moves.append(Move(BREAKER, phase, edges.tolist()))
        if not won and lose_check is not None and lose_check(state):
            outcome = BREAKER_WIN
            return False
        return True

    try:
        while outcome is None:
            if state.round >= move_cap:
                outcome = MAKER_WIN if won else MOVE_LIMIT
                break
            turns = (maker_turn, breaker_turn) if maker_first else (breaker_turn, maker_turn)
            for turn in turns:
                if state.n_free == 0:
                    outcome = MAKER_WIN if won or win_check(state) else BREAKER_WIN
                    break
                if not turn():
                    break
    except StrategyFailure as exc:
        record.failure = str(exc)
        outcome = MAKER_WIN if won else BREAKER_WIN
    record.outcome = outcome
    if outcome == MAKER_WIN and certificate is not None:
        record.certificate = certificate(state)
    record.stats["state"] = state
    return record
