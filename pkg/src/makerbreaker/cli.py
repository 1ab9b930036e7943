"""Command line entry point: play, trials, sweep, boxgame, verify."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .breaker import greedy_vs_optimal, play_box_game, solve_box_game
from .engine import GameRecord
from .errors import MakerBreakerError
from .experiments import TrialConfig, bias_sweep, run_trials, to_csv, to_json
from .games import BREAKERS, GAMES
from .verify import verify_record


def _game_args(p: argparse.ArgumentParser, games=GAMES) -> None:
    p.add_argument("--game", choices=games, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--l", type=int, default=0, help="cycle overlap for the l-cycle games")
    p.add_argument("--m", type=int, default=None, help="easing target (game default if omitted)")
    bias = p.add_mutually_exclusive_group()
    bias.add_argument("--beta", type=float, default=None)
    bias.add_argument("--bias", type=int, default=None, help="explicit Breaker bias b")
    p.add_argument("--maker", default=None)
    p.add_argument("--breaker", choices=BREAKERS, default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--play-out", action="store_true",
                   help="degree game: keep playing until every vertex was eased m times")
    p.add_argument("--out", type=Path, default=None)


def _config(a, trials: int = 1) -> TrialConfig:
    return TrialConfig(game=a.game, n=a.n, k=a.k, l=a.l, m=a.m, b=a.bias, beta=a.beta,
                       maker=a.maker, breaker=a.breaker, trials=trials, master_seed=a.seed,
                       play_out=a.play_out, workers=getattr(a, "workers", 1))


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_play(a) -> int:
    setup = _config(a).setup()
    rec = setup.play(a.seed)
    _emit(rec.dumps() + "\n", a.out)
    for v in rec.stats["violations"]:
        print(f"violation: {v}", file=sys.stderr)
    return 0 if not rec.stats["violations"] else 1


def cmd_trials(a) -> int:
    stats = run_trials(_config(a, a.trials))
    _emit(to_csv([stats]) if a.format == "csv" else to_json([stats]), a.out)
    return 0 if stats.violations == 0 else 1


def cmd_sweep(a) -> int:
    betas = [float(x) for x in a.betas.split(",") if x.strip()]
    rows = bias_sweep(_config(a, a.trials), betas)
    _emit(to_csv(rows) if a.format == "csv" else to_json(rows), a.out)
    return 0 if all(s.violations == 0 for s in rows) else 1


def cmd_boxgame(a) -> int:
    if a.table:
        lines = ["x,y,b,greedy,minimax"]
        for x in range(1, a.x + 1):
            for y in range(1, a.y + 1):
                for b in range(1, a.b + 1):
                    g = greedy_vs_optimal((y,) * x, b)
                    lines.append(f"{x},{y},{b},{int(g)},{int(solve_box_game((y,) * x, b))}")
        _emit("\n".join(lines) + "\n", a.out)
        return 0
    won = play_box_game(a.x, a.y, a.b)
    _emit(json.dumps({"x": a.x, "y": a.y, "b": a.b,
                      "winner": "BoxMaker" if won else "BoxBreaker"}) + "\n", a.out)
    return 0


def cmd_verify(a) -> int:
    rec = GameRecord.loads(Path(a.record).read_text())
    problems = verify_record(rec)
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: {rec.outcome} in {rec.rounds} rounds")
    return 0 if not problems else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="makerbreaker",
                                     description="Biased Maker-Breaker games on complete hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("play", help="play one game and print its record as JSON")
    _game_args(p)
    p.set_defaults(func=cmd_play)

    for name, func in (("trials", cmd_trials), ("sweep", cmd_sweep)):
        p = sub.add_parser(name, help="seeded batch of games" if name == "trials" else "batches over beta")
        _game_args(p)
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--workers", type=int, default=1)
        if name == "sweep":
            p.add_argument("--betas", required=True, help="comma separated, e.g. 0.3,3.0")
        p.set_defaults(func=func)

    p = sub.add_parser("boxgame", help="greedy BoxMaker against greedy BoxBreaker")
    p.add_argument("--x", type=int, required=True, help="number of boxes")
    p.add_argument("--y", type=int, required=True, help="balls per box")
    p.add_argument("--b", type=int, required=True, help="BoxMaker bias")
    p.add_argument("--table", action="store_true",
                   help="compare greedy with the exact solver on every x, y, b up to the given ones")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_boxgame)

    p = sub.add_parser("verify", help="replay a game record and re-check its certificate")
    p.add_argument("record")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MakerBreakerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
