"""Per-game wiring: board, strategies, win/lose tests, certificates and the
after-game invariant audit."""

from __future__ import annotations

import math

import numpy as np

from .berge import MAX_BERGE_N, BergeCertificate, is_berge_hamiltonian, longest_berge_path
from .board import GameState, build_lcycle_board, complete_board
from .breaker import GreedyBreaker, IsolationBreaker, RandomBreaker
from .engine import MAKER_WIN, BiasSpec, GameRecord, compute_bias, play_game, replay
from .errors import InvalidParameters
from .gf2 import GF2Basis, gf2_rank
from .maker import BOOST, BhcMaker, DangerMaker, LCycleMaker, RankMaker
from .verify import LCycleCertificate, verify_lcycle, verify_rainbow

GAMES = ("degree", "rank", "bhc", "lcycle", "lcycle-rainbow")
BREAKERS = ("random", "greedy", "isolation")
DEFAULT_M = {"degree": 1, "rank": 20, "bhc": 20, "lcycle": 10, "lcycle-rainbow": 10}
DEFAULT_MAKER = {"degree": "danger", "rank": "rank", "bhc": "bhc",
                 "lcycle": "lcycle", "lcycle-rainbow": "lcycle-rainbow"}
# greedy Breaker attacks vertices whose Maker degree is below this
GREEDY_TARGET = {"degree": None, "rank": 1, "bhc": 2, "lcycle": 1, "lcycle-rainbow": 1}


def danger_regime(b: int, n: int, k: int, m: int, cap: int, alpha: float, eps: float = 0.1) -> bool:
    """Bias small enough that every easing must find (1-alpha)*cap free edges."""
    return b <= (1 - eps) * alpha * cap / (k * m + math.log(n))


class GameSetup:
    """Validated parameters for one game type; :meth:`play` runs one seeded game."""

    def __init__(self, game: str, n: int, k: int, l: int = 0, m: int | None = None,
                 bias: BiasSpec | None = None, maker: str | None = None,
                 breaker: str = "random", play_out: bool = False, alpha: float | None = None):
        if game not in GAMES:
            raise InvalidParameters(f"unknown game {game!r}")
        if breaker not in BREAKERS:
            raise InvalidParameters(f"unknown breaker {breaker!r}")
        if n < 2 or k < 2 or k > n:
            raise InvalidParameters("need 2 <= k <= n")
        self.game, self.n, self.k, self.l = game, int(n), int(k), int(l)
        self.m = DEFAULT_M[game] if m is None else int(m)
        if self.m < 1:
            raise InvalidParameters("m must be at least 1")
        self.maker_name = maker or DEFAULT_MAKER[game]
        if self.maker_name != DEFAULT_MAKER[game]:
            raise InvalidParameters(f"maker {self.maker_name!r} does not play {game!r}")
        self.breaker_name = breaker
        self.play_out = play_out
        self.family = None
        if game.startswith("lcycle"):
            self.board, self.family = build_lcycle_board(n, k, l)
            if breaker == "isolation":
                raise InvalidParameters("isolation Breaker needs the complete hypergraph")
            bias = bias or BiasSpec(rule="lcycle")
            self.alpha = 1 / 11 if alpha is None else alpha
        else:
            if game == "bhc" and n > MAX_BERGE_N:
                raise InvalidParameters(f"bhc game limited to n <= {MAX_BERGE_N}")
            self.board = complete_board(n, k)
            bias = bias or BiasSpec(beta=0.5)
            self.alpha = 0.9 if alpha is None else alpha
        self.bias_spec = bias
        self.b = compute_bias(bias, n=n, k=k)
        self.in_regime = danger_regime(self.b, n, self.board.arity, self.m, self.board.cap, self.alpha)

    # ------------------------------------------------------------ players
    def _maker(self):
        bd, b = self.board, self.b
        if self.game == "degree":
            return DangerMaker(bd, b, self.m, self.alpha)
        if self.game == "rank":
            return RankMaker(bd, b, self.m, self.alpha)
        if self.game == "bhc":
            return BhcMaker(bd, b, self.m, eps=1 - self.alpha)
        return LCycleMaker(bd, self.family, b, self.m, self.alpha,
                           rainbow=self.game == "lcycle-rainbow")

    def _breaker(self):
        if self.breaker_name == "random":
            return RandomBreaker()
        if self.breaker_name == "greedy":
            return GreedyBreaker(GREEDY_TARGET[self.game] or self.m)
        return IsolationBreaker(self.board)

    # ------------------------------------------------------- win and lose
    def _checks(self):
        n, k, bd, m = self.n, self.k, self.board, self.m
        if self.game == "degree":
            win = lambda s: int(s.d_maker.min()) >= m
            lose = lambda s: bool(((s.d_maker < m) & (s.d_maker + s.avail < m)).any())
            cert = lambda s: {"type": "min_degree", "m": m, "min_degree": int(s.d_maker.min())}
            return win, lose, cert, m * n

        if self.game == "rank":
            target = n if k % 2 else n - 1
            basis = GF2Basis(n)
            seen = [0]

            def win(s):
                for e in s.maker[seen[0]:]:
                    basis.add(bd.edge_vertices(e))
                seen[0] = len(s.maker)
                return basis.rank >= target

            lose = lambda s: bool(((s.d_maker + s.avail) == 0).any())
            cert = lambda s: {"type": "rank", "rank": basis.rank, "target": target}
            self._basis = basis
            return win, lose, cert, bd.n_edges

        if self.game == "bhc":
            found = {}

            def win(s):
                if len(s.maker) < n or int(s.d_maker.min()) < 2:
                    return False
                c = is_berge_hamiltonian([bd.edge_vertices(e) for e in s.maker], n)
                if c is not None:
                    found["cert"] = c
                return c is not None

            lose = lambda s: bool(((s.d_maker + s.avail) < 2).any())
            cert = lambda s: found["cert"].to_json()
            return win, lose, cert, bd.n_edges

        D = self.family.D
        match_l = np.full(D, -1, dtype=np.int64)
        match_r = np.full(D, -1, dtype=np.int64)
        adj: list[list[int]] = [[] for _ in range(D)]
        seen = [0]
        size = [0]

        def augment(u, visited):
            for w in adj[u]:
                if not visited[w]:
                    visited[w] = True
                    if match_r[w] < 0 or augment(int(match_r[w]), visited):
                        match_l[u], match_r[w] = w, u
                        return True
            return False

        def win(s):
            for e in s.maker[seen[0]:]:
                i, j = divmod(int(e), D)
                adj[i].append(j)
            seen[0] = len(s.maker)
            if size[0] == D or int(s.d_maker.min()) < 1:
                return size[0] == D
            while size[0] < D:
                visited = np.zeros(D, dtype=bool)
                if not any(augment(u, visited) for u in np.flatnonzero(match_l < 0)):
                    break
                size[0] += 1
            return size[0] == D

        lose = lambda s: bool(((s.d_maker + s.avail) == 0).any())

        def cert(s):
            c = verify_lcycle([bd.edge_vertices(e) for e in s.maker], n, k, self.l)
            if c is None:
                return None
            out = c.to_json()
            if self.game == "lcycle-rainbow":
                out["colors"] = [self._edge_colour(s, e) for e in c.edges]
            return out

        return win, lose, cert, bd.n_edges

    def _edge_colour(self, state: GameState, edge) -> int | None:
        return state.colors.get(self.board.index_of(edge))

    # --------------------------------------------------------------- play
    def play(self, seed: int, check_invariants: bool = True) -> GameRecord:
        rng = np.random.default_rng(seed)
        maker, breaker = self._maker(), self._breaker()
        win, lose, cert, cap = self._checks()
        until_halt = self.play_out and self.game == "degree"
        rec = play_game(self.board, maker, breaker, self.b, win, lose, move_cap=cap, rng=rng,
                        seed=seed, until_halt=until_halt, certificate=cert,
                        check_invariants=check_invariants)
        rec.stats["maker"] = maker
        rec.stats["breaker"] = breaker
        rec.stats["violations"] = self.audit(rec) if check_invariants else []
        return rec

    def audit(self, rec: GameRecord) -> list[str]:
        """Re-check the module invariants on a finished game; returns messages."""
        out = []
        state: GameState = rec.stats["state"]
        maker = rec.stats["maker"]
        tracker = getattr(maker, "tracker", None)
        again = replay(rec)
        if not np.array_equal(again.owner, state.owner):
            out.append("replay does not reproduce the final board")
        if tracker is not None:
            if not np.array_equal(tracker.d_B, state.d_breaker):
                out.append("danger bookkeeping disagrees with Breaker degrees")
            if self.in_regime and tracker.availability_violations:
                out.append(f"{tracker.availability_violations} easings below (1-alpha)N free edges")
        if self.game == "degree" and rec.outcome == MAKER_WIN:
            if rec.win_round is None or rec.win_round > self.m * self.n:
                out.append("minimum degree reached after m*n rounds")
            if self.play_out and rec.stats.get("halted") and not (tracker.d_plus == self.m).all():
                out.append("easing counts differ from m at the end")
        if self.game == "rank":
            final = [self.board.edge_vertices(e) for e in state.maker]
            batch = gf2_rank(final, self.n)
            if batch != self._basis.rank:
                out.append(f"streaming rank {self._basis.rank} != batch rank {batch}")
            if self.k % 2 == 0 and batch > self.n - 1:
                out.append("rank above n-1 for even k")
        if self.game == "bhc":
            out.extend(self._audit_boosts(rec, maker))
            if rec.outcome == MAKER_WIN:
                c = BergeCertificate.from_json(rec.certificate)
                if not c.is_valid(self.n, [self.board.edge_vertices(e) for e in state.maker]):
                    out.append("Berge certificate does not verify")
        if self.game.startswith("lcycle") and rec.outcome == MAKER_WIN:
            if rec.certificate is None:
                out.append("perfect matching found but no l-cycle certificate")
            else:
                c = LCycleCertificate.from_json(rec.certificate)
                if not c.is_valid(self.n, self.k, [self.board.edge_vertices(e) for e in state.maker]):
                    out.append("l-cycle certificate does not verify")
                if self.game == "lcycle-rainbow" and not verify_rainbow(rec):
                    out.append("rainbow certificate repeats a colour")
        return out

    def _audit_boosts(self, rec: GameRecord, maker: BhcMaker) -> list[str]:
        out = []
        maker_edges = [mv.edges[0] for mv in rec.moves if mv.player == "M"]
        for base, e, before in maker.boost_log:
            H = [self.board.edge_vertices(x) for x in maker_edges[:before]]
            if maker_edges[before] != e:
                out.append("boost log out of step with the transcript")
                continue
            He = H + [self.board.edge_vertices(e)]
            if longest_berge_path(He, self.n)[0] <= base and is_berge_hamiltonian(He, self.n) is None:
                out.append(f"boost edge {e} did not lengthen the longest Berge path")
        return out

    def describe(self) -> dict:
        return {"game": self.game, "n": self.n, "k": self.k, "l": self.l, "m": self.m,
                "beta": self.bias_spec.beta, "b": self.b,
                "maker": self.maker_name, "breaker": self.breaker_name}


def boost_phase_moves(rec: GameRecord) -> int:
    return sum(1 for mv in rec.moves if mv.player == "M" and mv.phase == BOOST)


def degree_phase_hypergraph(n: int, k: int, m: int, b: int, seed: int,
                            breaker: str = "random", alpha: float = 0.9):
    """Maker's hypergraph when the minimum-degree phase stops.

    The phase stops once every vertex was eased ``m`` times, or earlier when
    an easing finds no free edge (record.failure says so) or the board runs out.
    """
    setup = GameSetup("degree", n, k, m=m, bias=BiasSpec(b=b), breaker=breaker, alpha=alpha)
    rng = np.random.default_rng(seed)
    maker = setup._maker()
    rec = play_game(setup.board, maker, setup._breaker(), setup.b, lambda s: False,
                    move_cap=setup.board.n_edges, rng=rng, seed=seed)
    state = rec.stats["state"]
    return [setup.board.edge_vertices(e) for e in state.maker], rec


__all__ = ["GAMES", "BREAKERS", "GameSetup", "danger_regime", "boost_phase_moves",
           "degree_phase_hypergraph"]
