import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from makerbreaker import _kernels as K
from makerbreaker.berge import edge_masks
from makerbreaker.board import complete_board
from makerbreaker.gf2 import packed_rows

needs_numba = pytest.mark.skipif(not K.NUMBA_AVAILABLE, reason="numba not importable")


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.integers(3, 10), st.integers(0, 10**6), st.booleans())
def test_berge_kernels_agree(n, seed, cycle):
    rng = np.random.default_rng(seed)
    bd = complete_board(n, 3)
    pick = rng.choice(bd.n_edges, size=int(rng.integers(0, min(bd.n_edges, 3 * n) + 1)), replace=False)
    masks = edge_masks([bd.edge_vertices(e) for e in pick])
    a = K.berge_search(n, masks, cycle, use_numba=True)
    b = K.berge_search(n, masks, cycle, use_numba=False)
    assert a[0] == b[0]


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 70), st.integers(1, 200), st.integers(0, 10**6))
def test_gf2_kernels_agree(n, m, seed):
    rng = np.random.default_rng(seed)
    edges = [tuple(rng.choice(n, size=min(n, 3), replace=False)) for _ in range(m)]
    words = packed_rows(edges, n)
    assert K.gf2_rank_words(words, use_numba=True) == K.gf2_rank_words(words, use_numba=False)


@needs_numba
@settings(max_examples=40, deadline=None)
@given(st.integers(4, 10), st.integers(0, 10**6), st.integers(1, 3))
def test_expander_kernels_agree(n, seed, r):
    rng = np.random.default_rng(seed)
    bd = complete_board(n, 3)
    pick = rng.choice(bd.n_edges, size=int(rng.integers(0, bd.n_edges + 1)), replace=False)
    masks = edge_masks([bd.edge_vertices(e) for e in pick])
    a = K.expander_violation(n, masks, r, 2.0, use_numba=True)
    b = K.expander_violation(n, masks, r, 2.0, use_numba=False)
    assert (a is None) == (b is None)


def test_env_flag_selects_fallback_and_keeps_records_identical():
    script = ("import makerbreaker as m, sys;"
              "from makerbreaker.engine import BiasSpec;"
              "rec = m.GameSetup('bhc', 9, 3, m=2, bias=BiasSpec(b=1)).play(3);"
              "sys.stdout.write(str(m.USE_NUMBA) + '\\n' + rec.dumps())")
    out = {}
    for flag in ("1", "0"):
        env = dict(os.environ, MAKERBREAKER_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True,
                             check=True)
        used, record = res.stdout.split("\n", 1)
        out[flag] = (used, record)
    assert out["1"][0] == "False"
    assert out["0"][0] == str(K.NUMBA_AVAILABLE)
    assert out["1"][1] == out["0"][1]
