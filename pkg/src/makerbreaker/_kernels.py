"""Hot inner loops.

Each kernel has a numba-compiled path and a fallback.  Set
``MAKERBREAKER_DISABLE_NUMBA=1`` to force the fallbacks (useful for debugging
and for the benchmark in ``benchmarks/bench_kernels.py``).

Kernels operate on plain arrays only; hypergraphs are int64 vertex bitmasks,
so anything exponential here assumes n <= 62.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and os.environ.get("MAKERBREAKER_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")


def _maybe_jit(fn):
    if NUMBA_AVAILABLE:
        return numba.njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------- bit helpers

def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


_popcount_jit = _maybe_jit(_popcount)


# ----------------------------------------------------------- Berge searching

def _berge_search(n, masks, cycle, stop_at, out_seq, out_edges):
    """Depth-first search over vertex sequences; each consecutive pair must be
    assigned its own edge containing it, maintained as an incremental
    bipartite matching (pairs -> edges).

    cycle=True: look for a Berge Hamilton cycle through vertex 0; returns n on
    success, 0 otherwise.  cycle=False: longest Berge path, stopping early
    once ``stop_at`` vertices are reached; returns its vertex count.
    The witness goes to out_seq[:len] / out_edges[:len-1] (or [:n] for cycles).
    """
    m = masks.shape[0]
    # CSR of edges containing each vertex pair
    npairs = n * n
    cnt = np.zeros(npairs + 1, dtype=np.int64)
    for e in range(m):
        me = masks[e]
        for u in range(n):
            if (me >> u) & 1:
                for w in range(u + 1, n):
                    if (me >> w) & 1:
                        cnt[u * n + w + 1] += 1
    for i in range(npairs):
        cnt[i + 1] += cnt[i]
    plist = np.empty(max(cnt[npairs], 1), dtype=np.int64)
    fill = cnt[:npairs].copy()
    for e in range(m):
        me = masks[e]
        for u in range(n):
            if (me >> u) & 1:
                for w in range(u + 1, n):
                    if (me >> w) & 1:
                        plist[fill[u * n + w]] = e
                        fill[u * n + w] += 1
    shadow = np.zeros(n, dtype=np.int64)
    for u in range(n):
        for w in range(u + 1, n):
            if cnt[u * n + w + 1] > cnt[u * n + w]:
                shadow[u] |= np.int64(1) << w
                shadow[w] |= np.int64(1) << u

    seq = np.zeros(n + 1, dtype=np.int64)
    cur = np.zeros(n + 1, dtype=np.int64)
    pkey = np.zeros(n + 1, dtype=np.int64)
    match = np.full(n + 1, -1, dtype=np.int64)
    owner = np.full(max(m, 1), -1, dtype=np.int64)
    seen = np.zeros(max(m, 1), dtype=np.int64)
    stamp = 0
    stk_pair = np.zeros(n + 2, dtype=np.int64)
    stk_cur = np.zeros(n + 2, dtype=np.int64)
    stk_edge = np.zeros(n + 2, dtype=np.int64)
    full = (np.int64(1) << n) - 1

    best = 0
    n_starts = 1 if cycle else n
    for s in range(n_starts):
        seq[0] = s
        visited = np.int64(1) << s
        d = 1
        cur[1] = 0
        if not cycle and best < 1:
            best = 1
            out_seq[0] = s
            if best >= stop_at:
                return best
        while d >= 1:
            extend = -1
            if d == n:
                if cycle:
                    # close the cycle with pair (seq[n-1], seq[0])
                    a = seq[n - 1]
                    b = seq[0]
                    if a > b:
                        a, b = b, a
                    pkey[n - 1] = a * n + b
                    stamp += 1
                    ok = False
                    sp = 0
                    stk_pair[0] = n - 1
                    stk_cur[0] = cnt[pkey[n - 1]]
                    while sp >= 0:
                        q = stk_pair[sp]
                        if stk_cur[sp] == cnt[pkey[q] + 1]:
                            sp -= 1
                            continue
                        e = plist[stk_cur[sp]]
                        stk_cur[sp] += 1
                        if seen[e] == stamp:
                            continue
                        seen[e] = stamp
                        stk_edge[sp] = e
                        if owner[e] == -1:
                            for t in range(sp, -1, -1):
                                owner[stk_edge[t]] = stk_pair[t]
                                match[stk_pair[t]] = stk_edge[t]
                            ok = True
                            break
                        sp += 1
                        stk_pair[sp] = owner[e]
                        stk_cur[sp] = cnt[pkey[owner[e]]]
                    if ok:
                        for i in range(n):
                            out_seq[i] = seq[i]
                            out_edges[i] = match[i]
                        return n
            else:
                # pruning: every unvisited vertex reachable from the end?
                end = seq[d - 1]
                unvis = full & ~visited
                reach = shadow[end] & unvis
                grow = reach
                while grow:
                    nxt = 0
                    g = grow
                    while g:
                        low = g & -g
                        x = 0
                        while (low >> x) != 1:
                            x += 1
                        nxt |= shadow[x]
                        g ^= low
                    nxt &= unvis & ~reach
                    reach |= nxt
                    grow = nxt
                if cycle:
                    feasible = reach == unvis and (unvis == 0 or (shadow[seq[0]] & unvis) != 0)
                else:
                    nreach = 0
                    g = reach
                    while g:
                        g &= g - 1
                        nreach += 1
                    feasible = d + nreach > best
                if feasible:
                    cand = shadow[end] & unvis
                    v = cur[d]
                    while v < n:
                        if (cand >> v) & 1:
                            # try to match pair (end, v)
                            a = end
                            b = v
                            if a > b:
                                a, b = b, a
                            pkey[d - 1] = a * n + b
                            stamp += 1
                            ok = False
                            sp = 0
                            stk_pair[0] = d - 1
                            stk_cur[0] = cnt[pkey[d - 1]]
                            while sp >= 0:
                                q = stk_pair[sp]
                                if stk_cur[sp] == cnt[pkey[q] + 1]:
                                    sp -= 1
                                    continue
                                e = plist[stk_cur[sp]]
                                stk_cur[sp] += 1
                                if seen[e] == stamp:
                                    continue
                                seen[e] = stamp
                                stk_edge[sp] = e
                                if owner[e] == -1:
                                    for t in range(sp, -1, -1):
                                        owner[stk_edge[t]] = stk_pair[t]
                                        match[stk_pair[t]] = stk_edge[t]
                                    ok = True
                                    break
                                sp += 1
                                stk_pair[sp] = owner[e]
                                stk_cur[sp] = cnt[pkey[owner[e]]]
                            if ok:
                                extend = v
                                break
                        v += 1
                    cur[d] = v + 1
            if extend >= 0:
                seq[d] = extend
                visited |= np.int64(1) << extend
                d += 1
                cur[d] = 0
                if not cycle and d > best:
                    best = d
                    for i in range(d):
                        out_seq[i] = seq[i]
                    for i in range(d - 1):
                        out_edges[i] = match[i]
                    if best >= stop_at:
                        return best
                continue
            # backtrack
            d -= 1
            if d == 0:
                break
            e = match[d - 1]
            owner[e] = -1
            match[d - 1] = -1
            visited &= ~(np.int64(1) << seq[d])
        # start vertex exhausted; nothing stays matched
        for i in range(m):
            owner[i] = -1
    return 0 if cycle else best


_berge_search_py = _berge_search
_berge_search_jit = _maybe_jit(_berge_search)


def berge_search(n: int, masks: np.ndarray, cycle: bool, stop_at: int | None = None,
                 use_numba: bool | None = None) -> tuple[int, np.ndarray, np.ndarray]:
    """Returns (length, vertex sequence, edge indices); see ``_berge_search``."""
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    out_seq = np.full(n, -1, dtype=np.int64)
    out_edges = np.full(n, -1, dtype=np.int64)
    stop = n if stop_at is None else int(stop_at)
    fn = _berge_search_jit if (USE_NUMBA if use_numba is None else use_numba) else _berge_search_py
    length = int(fn(n, masks, bool(cycle), stop, out_seq, out_edges))
    if cycle:
        return length, out_seq[:length], out_edges[:length]
    return length, out_seq[:length], out_edges[:max(length - 1, 0)]


# ------------------------------------------------------------ GF(2) ranking

def pack_rows(dense: np.ndarray) -> np.ndarray:
    """(rows, cols) 0/1 array -> (rows, ceil(cols/64)) uint64 words."""
    dense = np.asarray(dense, dtype=np.uint8)
    rows, cols = dense.shape
    W = max(1, -(-cols // 64))
    padded = np.zeros((rows, W * 64), dtype=np.uint8)
    padded[:, :cols] = dense
    bits = padded.reshape(rows, W, 64)
    weights = (np.uint64(1) << np.arange(64, dtype=np.uint64))
    return (bits.astype(np.uint64) * weights).sum(axis=2, dtype=np.uint64)


if NUMBA_AVAILABLE:
    @numba.njit(cache=True)
    def _gf2_rank_words_jit(words):
        A = words.copy()
        nrows, W = A.shape
        r = 0
        one = np.uint64(1)
        for w in range(W):
            for b in range(64):
                bit = one << np.uint64(b)
                piv = -1
                for i in range(r, nrows):
                    if A[i, w] & bit:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != r:
                    for j in range(W):
                        t = A[r, j]
                        A[r, j] = A[piv, j]
                        A[piv, j] = t
                for i in range(r + 1, nrows):
                    if A[i, w] & bit:
                        for j in range(w, W):
                            A[i, j] ^= A[r, j]
                r += 1
                if r == nrows:
                    return r
        return r


def _gf2_rank_words_numpy(words):
    A = np.array(words, dtype=np.uint64, copy=True)
    nrows, W = A.shape
    r = 0
    for w in range(W):
        for b in range(64):
            if r == nrows:
                return r
            bit = np.uint64(1) << np.uint64(b)
            col = (A[r:, w] & bit) != 0
            if not col.any():
                continue
            piv = r + int(np.argmax(col))
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            below = (A[r + 1:, w] & bit) != 0
            if below.any():
                A[r + 1:][below] ^= A[r]
            r += 1
    return r


def gf2_rank_words(words: np.ndarray, use_numba: bool | None = None) -> int:
    """Rank over GF(2) of a bit-packed row matrix (row elimination)."""
    words = np.ascontiguousarray(words, dtype=np.uint64)
    if words.shape[0] == 0:
        return 0
    if (USE_NUMBA if use_numba is None else use_numba) and NUMBA_AVAILABLE:
        return int(_gf2_rank_words_jit(words))
    return int(_gf2_rank_words_numpy(words))


# ---------------------------------------------------- exhaustive expansion

def _max_y_size(alpha: float, x: int) -> int:
    # largest integer strictly below alpha * x
    return max(int(math.ceil(alpha * x)) - 1, 0)


if NUMBA_AVAILABLE:
    @numba.njit(cache=True)
    def _expander_violation_jit(n, masks, r, ysizes, out):
        m = masks.shape[0]
        full = (np.int64(1) << n) - 1
        for x in range(1, r + 1):
            ys = ysizes[x]
            if ys > n - x:
                ys = n - x
            X = (np.int64(1) << x) - 1
            while X <= full:
                # edges meeting X exactly once
                ncand = 0
                cand = np.empty(m, dtype=np.int64)
                for e in range(m):
                    if _popcount_jit(masks[e] & X) == 1:
                        cand[ncand] = masks[e]
                        ncand += 1
                if ncand == 0:
                    out[0] = X
                    out[1] = 0
                    return True
                Y = (np.int64(1) << ys) - 1
                while Y <= full:
                    if (Y & X) == 0:
                        hit_all = True
                        for i in range(ncand):
                            if (cand[i] & Y) == 0:
                                hit_all = False
                                break
                        if hit_all:
                            out[0] = X
                            out[1] = Y
                            return True
                    if Y == 0:
                        break
                    u = Y & -Y
                    v = Y + u
                    Y = v + (((v ^ Y) // u) >> 2)
                u = X & -X
                v = X + u
                X = v + (((v ^ X) // u) >> 2)
        return False


def _masks_by_popcount(n: int) -> list[np.ndarray]:
    allm = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc += (allm >> b) & 1
    return [allm[pc == c] for c in range(n + 1)]


def _expander_violation_numpy(n, masks, r, ysizes, out):
    by_pc = _masks_by_popcount(n)
    masks = np.asarray(masks, dtype=np.int64)
    bits = [((masks >> b) & 1) for b in range(n)]
    for x in range(1, r + 1):
        ys = min(int(ysizes[x]), n - x)
        Ys = by_pc[ys]
        for X in by_pc[x]:
            inter = np.zeros(masks.shape[0], dtype=np.int64)
            for b in range(n):
                if (X >> b) & 1:
                    inter += bits[b]
            cand = masks[inter == 1]
            if cand.size == 0:
                out[0], out[1] = X, 0
                return True
            Yok = Ys[(Ys & X) == 0]
            if Yok.size == 0:
                continue
            hit = ((Yok[:, None] & cand[None, :]) != 0).all(axis=1)
            if hit.any():
                out[0], out[1] = X, int(Yok[np.argmax(hit)])
                return True
    return False


def expander_violation(n: int, masks: np.ndarray, r: int, alpha: float,
                       use_numba: bool | None = None) -> tuple[int, int] | None:
    """First (X, Y) bitmask pair violating (r, alpha)-expansion, or None."""
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    ysizes = np.array([_max_y_size(alpha, x) for x in range(r + 1)], dtype=np.int64)
    out = np.zeros(2, dtype=np.int64)
    r = min(int(r), n)
    if (USE_NUMBA if use_numba is None else use_numba) and NUMBA_AVAILABLE:
        found = _expander_violation_jit(n, masks, r, ysizes, out)
    else:
        found = _expander_violation_numpy(n, masks, r, ysizes, out)
    return (int(out[0]), int(out[1])) if found else None
