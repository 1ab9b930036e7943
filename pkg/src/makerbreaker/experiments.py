"""Seeded Monte Carlo batches, bias sweeps and CSV/JSON output."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from statistics import NormalDist

from .breaker import play_box_game
from .engine import MAKER_WIN, BiasSpec
from .errors import InvalidParameters, MakerBreakerError
from .games import GameSetup

CSV_FIELDS = ("game", "n", "k", "l", "m", "beta", "b", "maker", "breaker", "trials", "wins",
              "ci_lo", "ci_hi", "mean_rounds", "violations")
_MASK = (1 << 64) - 1
_Z95 = NormalDist().inv_cdf(0.975)


def splitmix64(x: int) -> int:
    """The splitmix64 output function; a bijection on 64-bit words."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def trial_seed(master_seed: int, i: int) -> int:
    """Seed of trial ``i``; distinct for distinct ``i`` under a fixed master seed."""
    return splitmix64(splitmix64(master_seed) + i)


def wilson_interval(wins: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = wins / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    # the bounds are exactly 0 and 1 at the extremes; avoid cancellation noise
    lo = 0.0 if wins == 0 else max(0.0, centre - half)
    hi = 1.0 if wins == trials else min(1.0, centre + half)
    return lo, hi


@dataclass
class TrialConfig:
    game: str
    n: int
    k: int
    l: int = 0
    m: int | None = None
    b: int | None = None
    beta: float | None = None
    bias_rule: str | None = None
    maker: str | None = None
    breaker: str = "random"
    trials: int = 100
    master_seed: int = 0
    play_out: bool = False
    workers: int = 1

    def bias_spec(self) -> BiasSpec | None:
        given = [x is not None for x in (self.b, self.beta, self.bias_rule)]
        if sum(given) > 1:
            raise InvalidParameters("give at most one of b, beta, bias_rule")
        if not any(given):
            return None
        try:
            return BiasSpec(b=self.b, beta=self.beta, rule=self.bias_rule)
        except ValueError as exc:
            raise InvalidParameters(str(exc)) from exc

    def setup(self) -> GameSetup:
        """Validated game parameters (raises before any trial runs)."""
        if self.trials < 0:
            raise InvalidParameters("trials must be non-negative")
        return GameSetup(self.game, self.n, self.k, self.l, self.m, self.bias_spec(),
                         self.maker, self.breaker, self.play_out)


@dataclass
class TrialResult:
    index: int
    seed: int
    outcome: str
    rounds: int
    maker_edges: int
    violations: list[str] = field(default_factory=list)
    failure: str | None = None


@dataclass
class SummaryStats:
    game: str
    n: int
    k: int
    l: int
    m: int | None
    beta: float | None
    b: int | None
    maker: str
    breaker: str
    trials: int = 0
    wins: int = 0
    ci_lo: float = 0.0
    ci_hi: float = 1.0
    mean_rounds: float = 0.0
    mean_maker_edges: float = 0.0
    violations: int = 0
    failures: int = 0
    results: list[TrialResult] = field(default_factory=list, repr=False)

    @property
    def win_rate(self) -> float:
        return self.wins / self.trials if self.trials else 0.0

    def row(self) -> dict:
        d = asdict(self)
        return {f: d[f] for f in CSV_FIELDS}

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("results")
        d["violation_messages"] = [f"trial {r.index}: {v}" for r in self.results for v in r.violations]
        return d


def _play_one(setup: GameSetup, index: int, seed: int) -> TrialResult:
    try:
        rec = setup.play(seed)
    except (MakerBreakerError, AssertionError) as exc:
        return TrialResult(index, seed, "error", 0, 0, [f"{type(exc).__name__}: {exc}"])
    return TrialResult(index, seed, rec.outcome, rec.rounds, len(rec.stats["state"].maker),
                       list(rec.stats["violations"]), rec.failure)


def _play_box(cfg: TrialConfig, index: int, seed: int) -> TrialResult:
    won = play_box_game(cfg.n, cfg.k, cfg.b)
    return TrialResult(index, seed, MAKER_WIN if won else "BreakerWin", 0, 0)


def _worker(args):
    cfg, index, seed = args
    if cfg.game == "boxgame":
        return _play_box(cfg, index, seed)
    return _play_one(cfg.setup(), index, seed)


def _summary(cfg: TrialConfig, setup: GameSetup | None) -> SummaryStats:
    if setup is None:
        return SummaryStats("boxgame", cfg.n, cfg.k, 0, None, None, cfg.b, "boxmaker", "greedy")
    d = setup.describe()
    return SummaryStats(d["game"], d["n"], d["k"], d["l"], d["m"], d["beta"], d["b"],
                        d["maker"], d["breaker"])


def run_trials(cfg: TrialConfig) -> SummaryStats:
    """Play ``cfg.trials`` independent games; results are ordered by trial index."""
    if cfg.game == "boxgame":
        if cfg.b is None or cfg.b < 1 or cfg.n < 1 or cfg.k < 1:
            raise InvalidParameters("boxgame needs n boxes, k balls and bias b >= 1")
        setup = None
    else:
        setup = cfg.setup()
    stats = _summary(cfg, setup)
    jobs = [(cfg, i, trial_seed(cfg.master_seed, i)) for i in range(cfg.trials)]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_worker, jobs))
    elif setup is not None:
        results = [_play_one(setup, i, s) for _, i, s in jobs]
    else:
        results = [_worker(j) for j in jobs]
    results.sort(key=lambda r: r.index)
    stats.results = results
    stats.trials = len(results)
    stats.wins = sum(r.outcome == MAKER_WIN for r in results)
    stats.ci_lo, stats.ci_hi = wilson_interval(stats.wins, stats.trials)
    if results:
        stats.mean_rounds = sum(r.rounds for r in results) / len(results)
        stats.mean_maker_edges = sum(r.maker_edges for r in results) / len(results)
    stats.violations = sum(len(r.violations) for r in results)
    stats.failures = sum(r.failure is not None for r in results)
    return stats


def bias_sweep(cfg: TrialConfig, betas) -> list[SummaryStats]:
    """One batch per beta, sorted by beta; trends are reported, not enforced."""
    out = []
    for beta in sorted(betas):
        one = TrialConfig(**{**asdict(cfg), "beta": float(beta), "b": None, "bias_rule": None})
        out.append(run_trials(one))
    return out


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def to_csv(rows: list[SummaryStats]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for s in rows:
        r = s.row()
        w.writerow([_fmt(r[f]) for f in CSV_FIELDS])
    return buf.getvalue()


def to_json(rows: list[SummaryStats]) -> str:
    return json.dumps([s.to_json() for s in rows], indent=2, sort_keys=True) + "\n"
