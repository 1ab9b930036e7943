import itertools
import math

import numpy as np
from hypothesis import given, settings, strategies as st

from makerbreaker.board import complete_board
from makerbreaker.gf2 import GF2Basis, find_dependency, gf2_rank, incidence_matrix


def subset_rank(edges, n):
    """n minus log2 of the number of row subsets summing to zero."""
    A = incidence_matrix(edges, n).astype(np.int64) if edges else np.zeros((n, 0), np.int64)
    zero = 0
    for mask in range(1 << n):
        rows = [i for i in range(n) if mask >> i & 1]
        if not (A[rows].sum(axis=0) % 2).any():
            zero += 1
    return n - int(math.log2(zero))


edge_sets = st.integers(2, 8).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True).map(tuple),
             max_size=12)))


@settings(max_examples=150, deadline=None)
@given(edge_sets)
def test_rank_matches_subset_oracle(case):
    n, edges = case
    r = gf2_rank(edges, n)
    assert r == subset_rank(edges, n)
    basis = GF2Basis(n)
    assert basis.extend(edges) == r
    dep = find_dependency(edges, n)
    assert (dep is None) == (r == n)
    if dep is not None:
        A = incidence_matrix(edges, n)
        assert dep and not (A[sorted(dep)].sum(axis=0) % 2).any()


def test_rank_examples():
    assert gf2_rank([], 5) == 0
    assert gf2_rank([(0, 1, 2)], 5) == 1
    assert gf2_rank(list(itertools.combinations(range(4), 3)), 4) == 4
    assert gf2_rank(list(itertools.combinations(range(4), 2)), 4) == 3
    assert find_dependency(list(itertools.combinations(range(4), 2)), 4) == frozenset(range(4))


def test_complete_board_parity():
    for n in range(3, 11):
        for k in (2, 3, 4, 5):
            if k > n:
                continue
            bd = complete_board(n, k)
            edges = [bd.edge_vertices(e) for e in range(bd.n_edges)]
            r = gf2_rank(edges, n)
            if k % 2 == 0:
                assert r <= n - 1
            elif n > k:
                assert r == n


def test_streaming_add_reports_growth():
    b = GF2Basis(4)
    assert b.add((0, 1)) and b.add((1, 2)) and not b.add((0, 2))
    assert b.rank == 2


def test_rank_above_64_columns():
    rng = np.random.default_rng(0)
    bd = complete_board(40, 3)
    pick = rng.choice(bd.n_edges, size=300, replace=False)
    edges = [bd.edge_vertices(e) for e in pick]
    assert gf2_rank(edges, 40) == GF2Basis(40).extend(edges)
