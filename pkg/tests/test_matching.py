import itertools

import numpy as np
from hypothesis import given, settings, strategies as st

from makerbreaker.matching import hall_violator, matching_size, max_matching, neighbourhood


def deficiency_bound(n_left, adj):
    """max |S| - |N(S)| over left subsets; the maximum matching is n_left minus this."""
    best = 0
    for mask in range(1 << n_left):
        S = [u for u in range(n_left) if mask >> u & 1]
        best = max(best, len(S) - len(neighbourhood(adj, S)))
    return best


bipartite = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda d: st.tuples(st.just(d[0]), st.just(d[1]),
                        st.lists(st.sets(st.integers(0, d[1] - 1)).map(sorted),
                                 min_size=d[0], max_size=d[0])))


def _check(nl, nr, adj):
    match = max_matching(nl, nr, adj)
    used = [w for w in match if w != -1]
    assert len(used) == len(set(used))
    assert all(w in adj[u] for u, w in enumerate(match) if w != -1)
    size = matching_size(match)
    assert size == nl - deficiency_bound(nl, adj)
    S = hall_violator(nl, nr, adj, match)
    assert (S is None) == (size == nl)
    if S is not None:
        assert len(neighbourhood(adj, S)) < len(S)


@settings(max_examples=300, deadline=None)
@given(bipartite)
def test_matching_and_hall(case):
    _check(*case)


def test_examples():
    D = 5
    full = [list(range(D)) for _ in range(D)]
    assert matching_size(max_matching(D, D, full)) == D
    assert hall_violator(D, D, full) is None
    adj = [[0], [0], [1, 2]]
    assert hall_violator(3, 3, adj) == frozenset({0, 1})


def test_all_small_graphs_exhaustively():
    for nl, nr in [(1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]:
        pairs = list(itertools.product(range(nl), range(nr)))
        for mask in range(1 << len(pairs)):
            adj = [[] for _ in range(nl)]
            for t, (u, w) in enumerate(pairs):
                if mask >> t & 1:
                    adj[u].append(w)
            _check(nl, nr, adj)


def test_larger_random_graphs_against_bound():
    rng = np.random.default_rng(1)
    for _ in range(100):
        nl, nr = rng.integers(1, 9, size=2)
        adj = [sorted(set(rng.integers(0, nr, size=rng.integers(0, 4)).tolist())) for _ in range(nl)]
        _check(int(nl), int(nr), adj)
