import json
from fractions import Fraction

import numpy as np
import pytest

from makerbreaker.board import BREAKER, MAKER, GameState, complete_board
from makerbreaker.breaker import RandomBreaker
from makerbreaker.engine import (BREAKER_WIN, MAKER_WIN, MOVE_LIMIT, BiasSpec, GameRecord,
                                 compute_bias, play_game, replay)
from makerbreaker.errors import IllegalMove, RecordParseError
from makerbreaker.games import GameSetup
from makerbreaker.maker import DangerMaker


def test_bias_examples():
    # 4851 / ln 100 = 1053.39..., bounded with exact rationals around ln 100
    assert Fraction(4851) / Fraction("4.60518") > 1053 and Fraction(4851) / Fraction("4.60517") < 1054
    assert compute_bias(BiasSpec(beta=1.0), n=100, k=3) == 1053
    assert compute_bias(BiasSpec(b=7), n=100, k=3) == 7
    assert compute_bias(BiasSpec(rule="lcycle"), n=120, k=3) == 4
    assert compute_bias(BiasSpec(beta=1e-9), n=100, k=3) == 1


@pytest.mark.parametrize("kw", [{}, {"b": 1, "beta": 1.0}, {"b": 0}, {"rule": "other"}])
def test_bias_spec_rejects(kw):
    with pytest.raises(ValueError):
        BiasSpec(**kw)


def _degree_game(n=20, k=3, m=1, b=1, seed=0, **kw):
    return GameSetup("degree", n, k, m=m, bias=BiasSpec(b=b), **kw).play(seed)


def test_small_degree_game_wins_within_mn():
    rec = _degree_game()
    assert rec.outcome == MAKER_WIN and rec.rounds <= 20
    assert rec.stats["violations"] == []


def test_huge_bias_isolates_a_vertex():
    bd = complete_board(8, 3)
    rec = _degree_game(n=8, b=bd.n_edges)
    assert rec.outcome == BREAKER_WIN


def test_move_cap_zero_gives_move_limit():
    bd = complete_board(8, 3)
    mk = DangerMaker(bd, 1, 1)
    rec = play_game(bd, mk, RandomBreaker(), 1, lambda s: False, move_cap=0)
    assert rec.outcome == MOVE_LIMIT and rec.moves == []


def test_record_determinism_and_roundtrip():
    a = _degree_game(n=30, m=2, b=5, seed=9)
    b = _degree_game(n=30, m=2, b=5, seed=9)
    assert a.dumps() == b.dumps()
    assert a.dumps() != _degree_game(n=30, m=2, b=5, seed=10).dumps()
    d = json.loads(a.dumps())
    assert list(d)[:5] == ["board", "bias", "seed", "moves", "outcome"]
    again = GameRecord.loads(a.dumps())
    assert again.dumps() == a.dumps()
    assert np.array_equal(replay(again).owner, a.stats["state"].owner)


def test_moves_respect_bias():
    rec = _degree_game(n=30, m=2, b=5, seed=3)
    for mv in rec.moves:
        if mv.player == MAKER:
            assert len(mv.edges) == 1
        else:
            assert len(mv.edges) <= 5


def test_replay_empty_record_is_initial_state():
    bd = complete_board(6, 3)
    s = replay(GameRecord(bd, 2, 0))
    assert s.n_free == bd.n_edges and not s.maker and not s.breaker


def test_tampered_record_raises():
    rec = _degree_game(n=12, seed=1)
    d = json.loads(rec.dumps())
    d["moves"][1]["edges"][0] = d["moves"][0]["edges"][0]
    with pytest.raises(IllegalMove):
        replay(GameRecord.from_json(d))


@pytest.mark.parametrize("text", ["{", "[]", '{"board": {"kind": "complete", "n": 5, "k": 3}}',
                                  '{"board": {"kind": "complete", "n": 5, "k": 3}, "bias": 1, "seed": 0,'
                                  ' "moves": [{"player": "X", "edges": []}]}'])
def test_malformed_record(text):
    with pytest.raises(RecordParseError):
        GameRecord.loads(text)


def test_breaker_takes_rest_when_board_runs_out():
    bd = complete_board(5, 3)
    rec = play_game(bd, DangerMaker(bd, 100, 5), RandomBreaker(), 100, lambda s: False)
    state = rec.stats["state"]
    assert state.n_free == 0 and len(state.maker) == 1
    assert rec.outcome == BREAKER_WIN


def test_breaker_first_flag():
    bd = complete_board(10, 3)
    rec = play_game(bd, DangerMaker(bd, 3, 1), RandomBreaker(), 3,
                    lambda s: int(s.d_maker.min()) >= 1, maker_first=False, seed=4)
    assert rec.moves[0].player == BREAKER


def test_oversized_breaker_move_is_illegal():
    class Greedy:
        def move(self, state, rng):
            return state.free_indices()[:3], "x"

    bd = complete_board(6, 3)
    with pytest.raises(IllegalMove):
        play_game(bd, DangerMaker(bd, 2, 1), Greedy(), 2, lambda s: False)


def test_state_sets_disjoint_after_game():
    rec = _degree_game(n=25, m=2, b=20, seed=5, breaker="greedy")
    s: GameState = rec.stats["state"]
    assert not set(s.maker) & set(s.breaker)
    assert len(s.maker) + len(s.breaker) + s.n_free == s.board.n_edges
