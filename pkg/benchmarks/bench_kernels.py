"""Time the compiled kernels against the numpy / Python fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from makerbreaker import _kernels as K
from makerbreaker.berge import edge_masks
from makerbreaker.board import complete_board
from makerbreaker.gf2 import packed_rows


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def cases(rng):
    board = complete_board(12, 3)
    pick = rng.choice(board.n_edges, size=30, replace=False)
    H = [board.edge_vertices(e) for e in pick]
    masks = edge_masks(H)
    yield "berge longest path n=12, 30 edges", lambda nb: K.berge_search(12, masks, False, use_numba=nb)[0]
    yield "berge cycle n=12, 30 edges", lambda nb: K.berge_search(12, masks, True, use_numba=nb)[0]

    big = complete_board(60, 3)
    sel = rng.choice(big.n_edges, size=400, replace=False)
    words = packed_rows([big.edge_vertices(e) for e in sel], 60)
    yield "gf2 rank 60 x 400", lambda nb: K.gf2_rank_words(words, use_numba=nb)

    sel = rng.choice(board.n_edges, size=70, replace=False)
    emasks = edge_masks([board.edge_vertices(e) for e in sel])
    yield "expander n=12 r=2 alpha=2", lambda nb: K.expander_violation(12, emasks, 2, 2.0, use_numba=nb)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    rng = np.random.default_rng(a.seed)
    if not K.NUMBA_AVAILABLE:
        print("numba not importable; only the fallback path is timed")
    print(f"{'kernel':38s} {'numba ms':>10s} {'fallback ms':>12s} {'speedup':>8s}")
    for name, fn in cases(rng):
        t_py, r_py = best_of(lambda: fn(False), a.repeat)
        if K.NUMBA_AVAILABLE:
            fn(True)   # compile outside the timing
            t_nb, r_nb = best_of(lambda: fn(True), a.repeat)
            assert r_nb == r_py, f"{name}: kernels disagree ({r_nb} vs {r_py})"
            print(f"{name:38s} {t_nb * 1e3:10.3f} {t_py * 1e3:12.3f} {t_py / t_nb:8.1f}x")
        else:
            print(f"{name:38s} {'-':>10s} {t_py * 1e3:12.3f}")


if __name__ == "__main__":
    main()
