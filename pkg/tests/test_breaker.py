import itertools
import math

import numpy as np
import pytest

from makerbreaker.board import BREAKER, MAKER, GameState, complete_board
from makerbreaker.breaker import (BOX, GROW, BoxGameInstance, IsolationBreaker, RandomBreaker,
                                  boxbreaker_greedy, boxmaker_allocation, boxmaker_move,
                                  check_grow_invariant, greedy_breaker_move, greedy_vs_optimal,
                                  play_box_game, random_breaker_move, solve_box_game)
from makerbreaker.engine import play_game
from makerbreaker.errors import InvalidParameters
from makerbreaker.maker import DangerMaker


def test_allocation_empties_smallest_box_when_it_fits():
    assert boxmaker_allocation([3, 5, 7], 3) == [3, 0, 0]
    inst = BoxGameInstance([set(range(3)), set(range(3, 8)), set(range(8, 15))], 3)
    boxmaker_move(inst)
    assert inst.boxes[0] == set()


def test_allocation_levels_the_fullest_boxes():
    assert boxmaker_allocation([4, 4], 3) == [2, 1]
    assert boxmaker_allocation([8] * 8, 4) == [1, 1, 1, 1, 0, 0, 0, 0]
    assert boxmaker_allocation([2, 9, 6], 5) == [2, 3, 0]
    assert boxmaker_allocation([0, 0], 3) == [0, 0]


def test_allocation_spends_at_most_budget():
    rng = np.random.default_rng(0)
    for _ in range(500):
        sizes = rng.integers(0, 9, size=rng.integers(1, 6)).tolist()
        b = int(rng.integers(1, 10))
        take = boxmaker_allocation(sizes, b)
        assert sum(take) == min(b, sum(sizes))
        assert all(0 <= t <= s for t, s in zip(take, sizes))


def test_boxbreaker_abandons_the_box_it_touches():
    inst = BoxGameInstance([{1}, {2, 3}], 1)
    assert boxbreaker_greedy(inst) == 0 and inst.dead == [True, False]


def test_boxes_must_be_disjoint():
    with pytest.raises(InvalidParameters):
        BoxGameInstance([{1, 2}, {2, 3}], 1)


def test_eight_by_eight_bias_four():
    assert 4 >= 8 / math.log(8)
    assert play_box_game(8, 8, 4)
    assert solve_box_game((8,) * 8, 4)


def test_tiny_box_games_match_minimax():
    for x, y, b in itertools.product(range(1, 4), repeat=3):
        opt = solve_box_game((y,) * x, b)
        assert greedy_vs_optimal((y,) * x, b) == opt, (x, y, b)
        if opt:
            assert play_box_game(x, y, b)


def test_minimax_oracle_small_cases():
    assert solve_box_game((1,), 1)
    assert not solve_box_game((2,), 1)
    assert solve_box_game((4, 4), 3)     # take 2 and 1, then finish the survivor
    assert not solve_box_game((3, 3, 3), 1)


def test_random_breaker_takes_everything_when_b_exceeds_rest():
    bd = complete_board(5, 3)
    s = GameState(bd)
    s.claim(MAKER, [0])
    got = random_breaker_move(s, bd, 50, np.random.default_rng(0))
    assert sorted(got.tolist()) == list(range(1, 10))
    s.claim(BREAKER, got)
    assert random_breaker_move(s, bd, 5, np.random.default_rng(0)).size == 0


def test_greedy_breaker_fresh_board_attacks_vertex_zero():
    bd = complete_board(7, 3)
    got = greedy_breaker_move(GameState(bd), bd, 5, 1)
    assert all(0 in bd.edge_vertices(e) for e in got) and got.size == 5


def test_greedy_breaker_finishes_the_weakest_vertex_first():
    bd = complete_board(7, 3)
    s = GameState(bd)
    s.claim(BREAKER, bd.inc[4][:12])        # vertex 4 keeps 3 free edges
    s.claim(MAKER, [e for e in bd.inc[0] if 4 not in bd.edge_vertices(e)][:1])
    got = greedy_breaker_move(s, bd, 5, 1)
    at4 = [e for e in bd.inc[4] if s.owner[e] == 0]
    assert set(at4) <= set(got.tolist())


def test_greedy_breaker_needs_positive_bias():
    bd = complete_board(5, 3)
    with pytest.raises(InvalidParameters):
        greedy_breaker_move(GameState(bd), bd, 0, 1)


def test_isolation_first_move_claims_pair_edges():
    bd = complete_board(100, 3)
    s = GameState(bd, 100)
    br = IsolationBreaker(bd)
    got, phase = br.move(s, np.random.default_rng(0))
    x, y = br.iso.S
    pair = [e for e in bd.inc[x] if y in bd.edge_vertices(e)]
    assert phase == GROW and len(pair) == 98
    assert set(pair) <= set(got.tolist()) and got.size <= 100


def test_isolation_switches_to_boxes_when_budget_is_short():
    bd = complete_board(30, 3)
    s = GameState(bd, 100)                   # 100 >= 30 but 100 < 5 * 30
    br = IsolationBreaker(bd)
    br.move(s, np.random.default_rng(0))
    assert len(br.iso.S) == 2
    s.claim(BREAKER, [e for e in range(bd.n_edges)
                      if len(set(bd.edge_vertices(e)) & set(br.iso.S)) >= 2])
    _, phase = br.move(s, np.random.default_rng(1))
    assert phase == BOX


def test_isolation_evicts_touched_vertices():
    bd = complete_board(40, 3)
    s = GameState(bd, 200)
    br = IsolationBreaker(bd)
    rng = np.random.default_rng(2)
    edges, _ = br.move(s, rng)
    s.claim(BREAKER, edges)
    v = br.iso.S[0]
    s.claim(MAKER, [e for e in bd.inc[v] if s.owner[e] == 0][:1])
    br.move(s, rng)
    assert v not in br.iso.S and br.iso.evicted == 1


def test_isolation_requires_complete_board():
    from makerbreaker.board import build_lcycle_board
    with pytest.raises(InvalidParameters):
        IsolationBreaker(build_lcycle_board(9, 3, 0)[0])


class WatchingMaker(DangerMaker):
    """Danger Maker that re-checks the isolation Breaker's set S after each Breaker move."""

    def __init__(self, board, b, breaker):
        super().__init__(board, b, 1)
        self.breaker = breaker
        self.grow_checks = 0
        self.box_checks = 0

    def on_breaker(self, state, edges):
        super().on_breaker(state, edges)
        iso = self.breaker.iso
        if iso.phase == GROW:
            assert check_grow_invariant(state, iso, self.board)
            self.grow_checks += 1
        else:
            # every free edge meets S at most once, so the boxes are disjoint
            in_S = np.zeros(self.board.n, bool)
            in_S[iso.S] = True
            free = state.free_indices()
            assert (in_S[self.board.members[free]].sum(axis=1) <= 1).all()
            self.box_checks += 1


@pytest.mark.parametrize("n,b", [(40, 600), (60, 900)])
def test_grow_invariant_after_every_breaker_move(n, b):
    bd = complete_board(n, 3)
    br = IsolationBreaker(bd)
    mk = WatchingMaker(bd, b, br)
    play_game(bd, mk, br, b, lambda s: int(s.d_maker.min()) >= 1,
              lambda s: bool((s.d_maker + s.avail == 0).any()), seed=n)
    assert mk.grow_checks >= 1 and mk.box_checks >= 1


def test_random_breaker_uniform_single_edge():
    bd = complete_board(6, 3)
    s = GameState(bd)
    rng = np.random.default_rng(9)
    draws = 100_000
    got = np.bincount([RandomBreaker().move(s, rng)[0][0] for _ in range(draws)],
                      minlength=bd.n_edges)
    p = 1 / bd.n_edges
    assert np.abs(got - draws * p).max() <= 5 * math.sqrt(draws * p * (1 - p))
