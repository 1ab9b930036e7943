"""Breaker strategies and the Box Game.

The isolation strategy grows a set S of Maker-free vertices whose mutual
edges Breaker owns, then plays BoxMaker on the boxes "free edges at v" for
v in S.  Random and greedy Breakers are baselines.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .board import Board, GameState, sample_available_edges
from .errors import InvalidParameters

GROW, BOX = "grow", "box"


# ----------------------------------------------------------------- Box Game

def boxmaker_allocation(sizes, b: int) -> list[int]:
    """How many balls BoxMaker takes from each box this turn.

    ``sizes`` are the remaining balls of the live boxes (dead boxes count as
    0).  While the smallest box fits in the remaining budget it is emptied;
    the rest of the budget is poured off the top so the fullest boxes come
    down to a common level (ties broken by lowest index).
    """
    left = [int(s) for s in sizes]
    take = [0] * len(left)
    budget = int(b)
    while budget > 0:
        live = [i for i, s in enumerate(left) if s > 0]
        if not live:
            break
        i_min = min(live, key=lambda i: (left[i], i))
        if left[i_min] <= budget:
            take[i_min] += left[i_min]
            budget -= left[i_min]
            left[i_min] = 0
            continue
        # water-filling: lowest level L with sum(max(0, s - L)) <= budget
        lo, hi = 0, max(left)
        while lo < hi:
            mid = (lo + hi) // 2
            if sum(max(0, left[i] - mid) for i in live) <= budget:
                hi = mid
            else:
                lo = mid + 1
        level = lo
        for i in live:
            if left[i] > level:
                budget -= left[i] - level
                take[i] += left[i] - level
                left[i] = level
        for i in live:
            if budget == 0:
                break
            if left[i] == level:
                take[i] += 1
                left[i] -= 1
                budget -= 1
        # finishing is never possible again this turn: sizes and budget fall together
        break
    return take


@dataclass
class BoxGameInstance:
    boxes: list[set]
    b: int
    dead: list[bool] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for box in self.boxes:
            if seen & box:
                raise InvalidParameters("boxes must be disjoint")
            seen |= box
        if not self.dead:
            self.dead = [False] * len(self.boxes)

    @classmethod
    def uniform(cls, x: int, y: int, b: int) -> "BoxGameInstance":
        return cls([{(i, j) for j in range(y)} for i in range(x)], b)

    def live_sizes(self) -> list[int]:
        return [len(bx) if not d else 0 for bx, d in zip(self.boxes, self.dead)]


def boxmaker_move(instance: BoxGameInstance, b: int | None = None) -> list:
    """Balls BoxMaker takes (removed from the instance).  Empty when every box is dead."""
    b = instance.b if b is None else b
    take = boxmaker_allocation(instance.live_sizes(), b)
    out = []
    for i, t in enumerate(take):
        if t:
            balls = sorted(instance.boxes[i])[:t]
            instance.boxes[i].difference_update(balls)
            out.extend(balls)
    return out


def boxbreaker_greedy(instance: BoxGameInstance) -> int | None:
    """BoxBreaker claims a ball from the live box with fewest balls; returns it."""
    live = [(len(bx), i) for i, (bx, d) in enumerate(zip(instance.boxes, instance.dead)) if not d and bx]
    if not live:
        return None
    _, i = min(live)
    instance.dead[i] = True
    instance.boxes[i].discard(min(instance.boxes[i]))
    return i


def play_box_game(x: int, y: int, b: int, breaker=None, max_turns: int = 10_000) -> bool:
    """Greedy BoxMaker against ``breaker`` (default greedy); True if BoxMaker wins."""
    inst = BoxGameInstance.uniform(x, y, b)
    breaker = breaker or boxbreaker_greedy
    for _ in range(max_turns):
        if all(inst.dead):
            return False
        boxmaker_move(inst)
        if any(not d and not bx for bx, d in zip(inst.boxes, inst.dead)):
            return True
        if breaker(inst) is None:
            return False
    return False


@functools.lru_cache(maxsize=None)
def solve_box_game(sizes: tuple[int, ...], b: int) -> bool:
    """Exact minimax: does BoxMaker (to move, ``b`` balls) win on these live boxes?"""
    sizes = tuple(sorted(s for s in sizes if s > 0))
    if not sizes:
        return False
    total = min(b, sum(sizes))
    for alloc in _allocations(sizes, total):
        after = tuple(s - a for s, a in zip(sizes, alloc))
        if 0 in after:
            return True
        # BoxBreaker kills one live box
        if all(solve_box_game(after[:i] + after[i + 1:], b) for i in range(len(after))):
            return True
    return False


def _allocations(sizes, total):
    def rec(i, left):
        if i == len(sizes) - 1:
            if left <= sizes[i]:
                yield (left,)
            return
        for t in range(min(left, sizes[i]) + 1):
            for rest in rec(i + 1, left - t):
                yield (t,) + rest
    yield from rec(0, total)


def greedy_vs_optimal(sizes: tuple[int, ...], b: int) -> bool:
    """Greedy BoxMaker against a BoxBreaker that answers optimally."""
    sizes = tuple(s for s in sizes if s > 0)
    if not sizes:
        return False
    take = boxmaker_allocation(sizes, b)
    after = tuple(s - t for s, t in zip(sizes, take))
    if 0 in after:
        return True
    return all(greedy_vs_optimal(after[:i] + after[i + 1:], b) for i in range(len(after)))


# ---------------------------------------------------------- hypergraph Breakers

class RandomBreaker:
    name = "random"

    def move(self, state: GameState, rng):
        return random_breaker_move(state, state.board, state.bias, rng), "random"


def random_breaker_move(state: GameState, board: Board, b: int, rng) -> np.ndarray:
    return sample_available_edges(state, b, rng)


class GreedyBreaker:
    name = "greedy"

    def __init__(self, m: int):
        self.m = m

    def move(self, state: GameState, rng):
        return greedy_breaker_move(state, state.board, state.bias, self.m), "greedy"


def greedy_breaker_move(state: GameState, board: Board, b: int, m: int) -> np.ndarray:
    """Exhaust the free edges of the neediest vertex (lowest Maker degree,
    then fewest free edges, then lowest index), then the next one.

    Vertices already at Maker degree ``m`` are only attacked once no vertex
    below ``m`` has a free edge left.
    """
    if b < 1:
        raise InvalidParameters("bias must be at least 1")
    avail = state.avail.copy()
    picked = np.zeros(board.n_edges, dtype=bool)
    out = []
    budget = b
    order_key = np.arange(board.n_play)
    while budget > 0:
        eligible = avail > 0
        needy = eligible & (state.d_maker < m)
        if needy.any():
            eligible = needy
        elif not eligible.any():
            break
        cand = np.flatnonzero(eligible)
        best = cand[np.lexsort((order_key[cand], avail[cand], state.d_maker[cand]))[0]]
        row = board.inc[best]
        free = row[(state.owner[row] == 0) & ~picked[row]]
        free = np.sort(free)[:budget]
        picked[free] = True
        avail -= np.bincount(board.members[free].ravel(), minlength=board.n_play)
        out.append(free)
        budget -= free.size
    return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


@dataclass
class IsolationState:
    S: list[int] = field(default_factory=list)
    phase: str = GROW
    target: int = 0
    evicted: int = 0


class IsolationBreaker:
    """Grow an untouched set S with all S-S edges claimed, then play BoxMaker
    on the free edges at the vertices of S."""

    name = "isolation"

    def __init__(self, board: Board):
        if board.kind != "complete":
            raise InvalidParameters("isolation strategy needs the complete hypergraph")
        self.board = board
        self.iso = IsolationState(target=math.ceil(board.n / math.log(board.n)))

    def move(self, state: GameState, rng):
        edges = isolation_move(state, self.iso, self.board, state.bias, rng)
        return edges, self.iso.phase


def _evict_touched(state: GameState, iso: IsolationState):
    keep = [v for v in iso.S if state.d_maker[v] == 0]
    iso.evicted += len(iso.S) - len(keep)
    iso.S = keep


def isolation_move(state: GameState, iso: IsolationState, board: Board, b: int, rng) -> np.ndarray:
    n, k = board.n, board.k
    _evict_touched(state, iso)
    chosen = np.empty(0, dtype=np.int64)
    if iso.phase == GROW:
        need = (1 + 2 * len(iso.S)) * math.comb(n, k - 2)
        fresh = np.flatnonzero(state.d_maker == 0)
        fresh = fresh[~np.isin(fresh, iso.S)]
        if len(iso.S) >= iso.target or b < need or fresh.size < 2:
            iso.phase = BOX
        else:
            x, y = (int(v) for v in rng.choice(fresh, size=2, replace=False))
            in_S = np.zeros(n, dtype=bool)
            in_S[iso.S] = True
            with_y = in_S.copy()
            with_y[y] = True
            ex = board.inc[x]
            ex = ex[with_y[board.members[ex]].any(axis=1)]
            ey = board.inc[y]
            ey = ey[in_S[board.members[ey]].any(axis=1)]
            chosen = np.union1d(ex, ey)
            chosen = chosen[state.owner[chosen] == 0]
            iso.S.extend([x, y])
    if iso.phase == BOX and iso.S:
        sizes = [int(state.avail[v]) for v in iso.S]
        take = boxmaker_allocation(sizes, b)
        parts = []
        for v, t in zip(iso.S, take):
            if t:
                row = board.inc[v]
                free = row[state.owner[row] == 0]
                parts.append(free if t >= free.size else rng.choice(free, size=t, replace=False))
        if parts:
            chosen = np.concatenate(parts)
    left = b - chosen.size
    if left > 0:
        # spend the rest on arbitrary free edges not already picked
        pool_size = state.n_free - chosen.size
        if pool_size > 0:
            extra = _sample_excluding(state, min(left, pool_size), chosen, rng)
            chosen = np.concatenate([chosen, extra])
    return chosen.astype(np.int64)


def _sample_excluding(state: GameState, count: int, exclude: np.ndarray, rng) -> np.ndarray:
    if exclude.size == 0:
        return sample_available_edges(state, count, rng)
    got = sample_available_edges(state, count + exclude.size, rng)
    got = got[~np.isin(got, exclude)]
    return got[:count]


def check_grow_invariant(state: GameState, iso: IsolationState, board: Board) -> bool:
    """S vertices untouched by Maker and every edge with two S vertices owned by Breaker."""
    S = [v for v in iso.S]
    if any(state.d_maker[v] != 0 for v in S):
        return False
    if len(S) < 2:
        return True
    in_S = np.zeros(board.n, dtype=bool)
    in_S[S] = True
    rows = np.unique(board.inc[S].ravel())
    two = rows[in_S[board.members[rows]].sum(axis=1) >= 2]
    return bool((state.owner[two] == 2).all())
