"""Bipartite matching (Hopcroft-Karp) and Hall-condition witnesses."""

from __future__ import annotations

from collections import deque
from typing import Sequence

INF = float("inf")


def max_matching(n_left: int, n_right: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Maximum matching; returns ``match[u]`` = right partner of left vertex u or -1."""
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0.0] * n_left

    def bfs() -> bool:
        q = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for w in adj[u]:
                p = match_r[w]
                if p == -1:
                    found = True
                elif dist[p] == INF:
                    dist[p] = dist[u] + 1
                    q.append(p)
        return found

    def dfs(root: int) -> bool:
        # iterative layered DFS; stack of (left vertex, neighbour cursor)
        stack = [(root, 0)]
        path = []
        while stack:
            u, i = stack[-1]
            nbrs = adj[u]
            if i == len(nbrs):
                dist[u] = INF
                stack.pop()
                if path:
                    path.pop()
                continue
            stack[-1] = (u, i + 1)
            w = nbrs[i]
            p = match_r[w]
            if p == -1:
                path.append(w)
                for (lu, _), rw in zip(stack, path):
                    match_l[lu] = rw
                    match_r[rw] = lu
                return True
            if dist[p] == dist[u] + 1:
                path.append(w)
                stack.append((p, 0))
        return False

    while bfs():
        for u in range(n_left):
            if match_l[u] == -1:
                dfs(u)
    return match_l


def matching_size(match: Sequence[int]) -> int:
    return sum(1 for w in match if w != -1)


def hall_violator(n_left: int, n_right: int, adj: Sequence[Sequence[int]],
                  match: Sequence[int] | None = None) -> frozenset[int] | None:
    """A left set S with |N(S)| < |S|, or None if the left side is saturable.

    Taken as the left vertices reachable by alternating paths from an
    unmatched left vertex (König's construction).
    """
    if match is None:
        match = max_matching(n_left, n_right, adj)
    match_r = [-1] * n_right
    for u, w in enumerate(match):
        if w != -1:
            match_r[w] = u
    free = [u for u in range(n_left) if match[u] == -1]
    if not free:
        return None
    root = free[0]
    seen_l = {root}
    seen_r = set()
    q = deque([root])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w in seen_r:
                continue
            seen_r.add(w)
            p = match_r[w]
            # maximality: every reached right vertex is matched
            if p != -1 and p not in seen_l:
                seen_l.add(p)
                q.append(p)
    return frozenset(seen_l)


def neighbourhood(adj: Sequence[Sequence[int]], S) -> set[int]:
    out = set()
    for u in S:
        out.update(adj[u])
    return out
