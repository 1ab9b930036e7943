"""Playing boards, edge encoding and the mutable game state.

Every board exposes the same flat view to the strategies: ``E`` edges indexed
``0..E-1``, each incident to ``arity`` *play vertices*.  For the complete
hypergraph the play vertices are the hypergraph vertices and the edge index is
the colex rank.  For the restricted l-cycle board the play vertices are the
two sides of the bipartite graph (``A_0..A_{D-1}`` then ``B``) and each board
edge stands for the hypergraph edge ``A_i | {w}``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import IllegalMove, InvalidEdge, InvalidParameters, InvalidRank

MAKER = "M"
BREAKER = "B"
_OWNER_CODE = {MAKER: 1, BREAKER: 2}

# Boards are materialised as flat arrays; refuse anything silly.
MAX_BOARD_EDGES = 20_000_000


def colex_rank(vertices: Sequence[int], n: int | None = None) -> int:
    """Colexicographic rank of a strictly increasing vertex tuple."""
    prev = -1
    rank = 0
    for j, v in enumerate(vertices, start=1):
        v = int(v)
        if v <= prev:
            raise InvalidEdge(f"vertices must be strictly increasing: {list(vertices)}")
        if n is not None and v >= n:
            raise InvalidEdge(f"vertex {v} out of range for n={n}")
        rank += math.comb(v, j)
        prev = v
    if prev < 0:
        raise InvalidEdge("empty edge")
    return rank


def colex_unrank(r: int, n: int, k: int) -> tuple[int, ...]:
    if not 0 <= r < math.comb(n, k):
        raise InvalidRank(f"rank {r} outside [0, C({n},{k}))")
    out = []
    c = n - 1
    for j in range(k, 0, -1):
        while math.comb(c, j) > r:
            c -= 1
        out.append(c)
        r -= math.comb(c, j)
        c -= 1
    return tuple(reversed(out))


@dataclass(frozen=True, order=True)
class EdgeId:
    """A hyperedge as its sorted vertex tuple; ``rank`` is its colex rank."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        colex_rank(vs)  # validates
        object.__setattr__(self, "vertices", vs)

    @property
    def rank(self) -> int:
        return colex_rank(self.vertices)

    @property
    def k(self) -> int:
        return len(self.vertices)

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "EdgeId":
        return cls(tuple(sorted(int(v) for v in vertices)))


def _binom_table(n: int, k: int) -> np.ndarray:
    tab = np.zeros((n + 1, k + 1), dtype=np.int64)
    for a in range(n + 1):
        for b in range(k + 1):
            tab[a, b] = math.comb(a, b)
    return tab


def colex_ranks(members: np.ndarray) -> np.ndarray:
    """Vectorised colex rank of each row of a sorted (E, k) vertex array."""
    members = np.asarray(members, dtype=np.int64)
    n = int(members.max(initial=0)) + 1
    k = members.shape[1]
    tab = _binom_table(n, k)
    ranks = np.zeros(members.shape[0], dtype=np.int64)
    for j in range(k):
        ranks += tab[members[:, j], j + 1]
    return ranks


def _incidence_table(members: np.ndarray, n_play: int) -> np.ndarray:
    flat = members.ravel()
    counts = np.bincount(flat, minlength=n_play)
    if counts.min() != counts.max():
        raise InvalidParameters("board is not regular: incident-edge counts differ")
    order = np.argsort(flat, kind="stable")
    return (order // members.shape[1]).astype(np.int64).reshape(n_play, counts[0])


class Board:
    """Immutable board.  Build with :func:`complete_board`, :func:`regular_board`
    or :func:`build_lcycle_board`."""

    def __init__(self, kind: str, n: int, k: int, members: np.ndarray,
                 labels: np.ndarray, n_play: int, params: dict | None = None):
        self.kind = kind
        self.n = n                # hypergraph vertex count
        self.k = k                # hypergraph uniformity
        self.members = np.ascontiguousarray(members, dtype=np.int64)
        self.members.setflags(write=False)
        self.arity = self.members.shape[1]
        self.n_play = n_play
        self.n_edges = self.members.shape[0]
        self.inc = _incidence_table(self.members, n_play)
        self.inc.setflags(write=False)
        self.cap = self.inc.shape[1]   # N for complete boards, D for regular ones
        self._labels = labels          # (E, k) hypergraph vertices, sorted rows
        self.params = dict(params or {})
        if kind == "complete":
            self._lookup = None
        else:
            self._lookup = {tuple(int(x) for x in row): i for i, row in enumerate(labels)}

    def __repr__(self):
        return f"Board({self.kind}, n={self.n}, k={self.k}, edges={self.n_edges})"

    def edge(self, idx: int) -> EdgeId:
        return EdgeId(tuple(int(x) for x in self._labels[idx]))

    def edge_vertices(self, idx: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self._labels[idx])

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    def index_of(self, edge) -> int:
        """Board index of an edge given as EdgeId or vertex iterable."""
        vs = edge.vertices if isinstance(edge, EdgeId) else tuple(sorted(int(v) for v in edge))
        if len(vs) != self.k:
            raise InvalidEdge(f"edge {list(vs)} has size {len(vs)}, board is {self.k}-uniform")
        if self._lookup is None:
            return colex_rank(vs, self.n)
        try:
            return self._lookup[vs]
        except KeyError:
            raise InvalidEdge(f"edge {list(vs)} is not on the {self.kind} board") from None

    def descriptor(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "k": self.k}
        if self.kind == "lcycle":
            d["l"] = self.params["l"]
        elif self.kind == "regular":
            d["edges"] = [list(map(int, row)) for row in self._labels]
        return d


@functools.lru_cache(maxsize=8)
def complete_board(n: int, k: int) -> Board:
    """The complete k-uniform hypergraph on n vertices; edge index = colex rank."""
    if k < 1 or n < k:
        raise InvalidParameters(f"need 1 <= k <= n, got n={n}, k={k}")
    total = math.comb(n, k)
    if total > MAX_BOARD_EDGES:
        raise InvalidParameters(f"C({n},{k}) = {total} edges is too large to play")
    combos = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(n), k)),
                         dtype=np.int64, count=total * k).reshape(total, k)
    members = np.empty_like(combos)
    members[colex_ranks(combos)] = combos
    return Board("complete", n, k, members, members, n)


def regular_board(n: int, edges: Iterable[Sequence[int]], degree: int | None = None) -> Board:
    """An arbitrary graph board; every vertex must have the same degree D."""
    rows = sorted({tuple(sorted(map(int, e))) for e in edges}, key=colex_rank)
    for r in rows:
        if len(r) != 2 or r[0] == r[1] or r[1] >= n or r[0] < 0:
            raise InvalidEdge(f"bad graph edge {r}")
    members = np.array(rows, dtype=np.int64).reshape(-1, 2)
    deg = np.bincount(members.ravel(), minlength=n)
    D = int(deg[0]) if n else 0
    if (deg != D).any() or (degree is not None and D != degree):
        raise InvalidParameters(f"graph is not {degree if degree is not None else D}-regular")
    return Board("regular", n, 2, members, members, n, {"D": D})


@dataclass(frozen=True)
class AFamily:
    """The (k-1)-sets A_i forming an l-cycle on [0, n-D) plus the spare set B."""

    n: int
    k: int
    l: int
    D: int
    sets: tuple[tuple[int, ...], ...]
    B: tuple[int, ...]

    def h_edge(self, i: int, j: int) -> tuple[int, ...]:
        """Hypergraph edge A_i + {B[j]}."""
        return tuple(sorted(self.sets[i] + (self.B[j],)))


def a_family(n: int, k: int, l: int) -> AFamily:
    if k < 2 or l < 0 or 2 * l >= k:
        raise InvalidParameters(f"need 0 <= l < k/2, got k={k}, l={l}")
    if n % (k - l):
        raise InvalidParameters(f"(k-l)={k - l} must divide n={n}")
    D = n // (k - l)
    if D < k:
        raise InvalidParameters(f"D = n/(k-l) = {D} must be at least k={k}")
    base = n - D
    step = k - l - 1
    sets = tuple(tuple(sorted((step * i + t) % base for t in range(k - 1))) for i in range(D))
    return AFamily(n, k, l, D, sets, tuple(range(base, n)))


@functools.lru_cache(maxsize=8)
def build_lcycle_board(n: int, k: int, l: int) -> tuple[Board, AFamily]:
    """Restricted bipartite board: A-side vertex i, B-side vertex D+j, edge i*D+j."""
    fam = a_family(n, k, l)
    D = fam.D
    ii, jj = np.divmod(np.arange(D * D, dtype=np.int64), D)
    members = np.stack([ii, D + jj], axis=1)
    labels = np.array([fam.h_edge(i, j) for i, j in zip(ii.tolist(), jj.tolist())], dtype=np.int64)
    board = Board("lcycle", n, k, members, labels, 2 * D, {"l": l, "D": D})
    return board, fam


def board_from_descriptor(desc: dict) -> Board:
    kind = desc.get("kind")
    if kind == "complete":
        return complete_board(int(desc["n"]), int(desc["k"]))
    if kind == "lcycle":
        return build_lcycle_board(int(desc["n"]), int(desc["k"]), int(desc["l"]))[0]
    if kind == "regular":
        return regular_board(int(desc["n"]), desc["edges"])
    raise InvalidParameters(f"unknown board kind {kind!r}")


class GameState:
    """Claimed edges of both players plus per-vertex degree counters.

    ``owner[e]`` is 0 (free), 1 (Maker) or 2 (Breaker).  Degree arrays are
    indexed by play vertex.
    """

    def __init__(self, board: Board, bias: int = 1):
        self.board = board
        self.bias = int(bias)
        self.round = 0
        self.owner = np.zeros(board.n_edges, dtype=np.int8)
        self.maker: list[int] = []
        self.breaker: list[int] = []
        self.colors: dict[int, int] = {}
        self.d_maker = np.zeros(board.n_play, dtype=np.int64)
        self.d_breaker = np.zeros(board.n_play, dtype=np.int64)
        self.avail = np.full(board.n_play, board.cap, dtype=np.int64)
        self.n_free = board.n_edges

    @property
    def maker_edges(self) -> set[EdgeId]:
        return {self.board.edge(e) for e in self.maker}

    @property
    def breaker_edges(self) -> set[EdgeId]:
        return {self.board.edge(e) for e in self.breaker}

    def free_indices(self) -> np.ndarray:
        return np.flatnonzero(self.owner == 0)

    def _as_indices(self, edges) -> np.ndarray:
        if isinstance(edges, (int, np.integer)):
            return np.array([edges], dtype=np.int64)
        if isinstance(edges, EdgeId):
            return np.array([self.board.index_of(edges)], dtype=np.int64)
        if isinstance(edges, np.ndarray) and edges.dtype.kind in "iu":
            return edges.astype(np.int64, copy=False).ravel()
        if isinstance(edges, list) and edges and type(edges[0]) is int:
            try:
                arr = np.asarray(edges)
            except ValueError:      # ragged mix of indices and vertex tuples
                arr = None
            # a list of vertex tuples would come out 2-D, EdgeIds as objects
            if arr is not None and arr.ndim == 1 and arr.dtype.kind in "iu":
                return arr.astype(np.int64, copy=False)
        out = []
        for e in edges:
            if isinstance(e, (int, np.integer)):
                out.append(int(e))
            else:
                out.append(self.board.index_of(e))
        return np.asarray(out, dtype=np.int64)

    def claim(self, player: str, edges) -> np.ndarray:
        """Give ``edges`` (index, EdgeId or an iterable of either) to ``player``."""
        if player not in _OWNER_CODE:
            raise ValueError(f"unknown player {player!r}")
        idx = self._as_indices(edges)
        if idx.size == 0:
            return idx
        if idx.min() < 0 or idx.max() >= self.board.n_edges:
            raise InvalidEdge(f"edge index outside board of {self.board.n_edges} edges")
        if idx.size > 1 and np.unique(idx).size != idx.size:
            raise IllegalMove(player, "same edge claimed twice in one move")
        taken = self.owner[idx] != 0
        if taken.any():
            e = int(idx[np.argmax(taken)])
            who = MAKER if self.owner[e] == 1 else BREAKER
            raise IllegalMove(player, f"edge {list(self.board.edge_vertices(e))} already owned by {who}")
        self.owner[idx] = _OWNER_CODE[player]
        verts = self.board.members[idx].ravel()
        deg = self.d_maker if player == MAKER else self.d_breaker
        counts = np.bincount(verts, minlength=self.board.n_play)
        deg += counts
        self.avail -= counts
        self.n_free -= idx.size
        (self.maker if player == MAKER else self.breaker).extend(idx.tolist())
        return idx


def available_degree(board: Board, state: GameState, v: int) -> int:
    return int(state.avail[v])


def available_incident(board: Board, state: GameState, v: int) -> np.ndarray:
    row = board.inc[v]
    return row[state.owner[row] == 0]


def sample_available_incident_edge(board: Board, state: GameState, v: int,
                                   rng: np.random.Generator) -> int | None:
    """Uniform free edge at play vertex ``v`` (board index), or None.

    Rejection sampling over the incidence row while at least 10% of it is
    free; explicit enumeration below that.
    """
    free = int(state.avail[v])
    if free <= 0:
        return None
    row = board.inc[v]
    if free * 10 >= board.cap:
        owner = state.owner
        while True:
            e = int(row[rng.integers(board.cap)])
            if owner[e] == 0:
                return e
    cands = row[state.owner[row] == 0]
    return int(cands[rng.integers(cands.size)])


def sample_available_edges(state: GameState, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` distinct free edges chosen uniformly without replacement
    (all of them if fewer remain)."""
    if count <= 0 or state.n_free == 0:
        return np.empty(0, dtype=np.int64)
    E = state.board.n_edges
    if count >= state.n_free:
        return state.free_indices()
    if state.n_free * 10 < E or count * 4 > state.n_free:
        free = state.free_indices()
        return np.sort(rng.choice(free, size=count, replace=False))
    picked: list[np.ndarray] = []
    have = 0
    seen = np.zeros(0, dtype=np.int64)
    while have < count:
        draw = rng.integers(0, E, size=int((count - have) * E / state.n_free) + 8)
        draw = draw[state.owner[draw] == 0]
        # keep first occurrences, in draw order
        _, first = np.unique(draw, return_index=True)
        draw = draw[np.sort(first)]
        if seen.size:
            draw = draw[~np.isin(draw, seen)]
        draw = draw[: count - have]
        picked.append(draw)
        seen = np.concatenate([seen, draw])
        have += draw.size
    return np.concatenate(picked)
