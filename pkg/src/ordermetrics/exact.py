"""Bitmask dynamic-programming kernels shared by the tour oracles and the
exact ratio / snake searches.

All kernels take a dense float64 distance matrix.  Where a total order is
involved the matrix is expected to be permuted so that row/column index
equals rank; increasing index tuples are then exactly the order-increasing
tuples.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _popcount(mask):
    c = 0
    while mask:
        mask &= mask - 1
        c += 1
    return c


@njit(cache=True)
def path_dp(dist):
    """D[mask, last] = length of the shortest open path visiting exactly the
    points of `mask` and ending at `last` (start point free)."""
    n = dist.shape[0]
    size = 1 << n
    D = np.full((size, n), np.inf)
    for i in range(n):
        D[1 << i, i] = 0.0
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        for last in range(n):
            if not (mask >> last) & 1:
                continue
            pm = mask ^ (1 << last)
            best = np.inf
            for prev in range(n):
                if (pm >> prev) & 1:
                    v = D[pm, prev] + dist[prev, last]
                    if v < best:
                        best = v
            D[mask, last] = best
    return D


@njit(cache=True)
def anchored_path_dp(dist):
    """D[mask, last] = shortest path visiting `mask`, starting at the lowest
    set bit of `mask` and ending at `last`."""
    n = dist.shape[0]
    size = 1 << n
    D = np.full((size, n), np.inf)
    for i in range(n):
        D[1 << i, i] = 0.0
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        low = 0
        while not (mask >> low) & 1:
            low += 1
        for last in range(n):
            if last == low or not (mask >> last) & 1:
                continue
            pm = mask ^ (1 << last)
            best = np.inf
            for prev in range(n):
                if (pm >> prev) & 1:
                    v = D[pm, prev] + dist[prev, last]
                    if v < best:
                        best = v
            D[mask, last] = best
    return D


@njit(cache=True)
def opt_path_per_mask(D):
    """Minimal open-path length per point subset, from a path_dp table."""
    size, n = D.shape
    out = np.zeros(size)
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        best = np.inf
        for last in range(n):
            if (mask >> last) & 1 and D[mask, last] < best:
                best = D[mask, last]
        out[mask] = best
    return out


@njit(cache=True)
def opt_cycle_per_mask(DA, dist):
    """Minimal closed-tour length per subset, from an anchored_path_dp table.
    Two-point subsets give twice the pair distance."""
    size, n = DA.shape
    out = np.zeros(size)
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        low = 0
        while not (mask >> low) & 1:
            low += 1
        best = np.inf
        for last in range(n):
            if last == low or not (mask >> last) & 1:
                continue
            v = DA[mask, last] + dist[last, low]
            if v < best:
                best = v
        out[mask] = best
    return out


@njit(cache=True)
def tour_per_mask(dist_ranked, cyclic):
    """Order-induced tour length per subset; the matrix must be permuted so
    that index equals rank."""
    n = dist_ranked.shape[0]
    size = 1 << n
    out = np.zeros(size)
    for mask in range(1, size):
        total = 0.0
        first = -1
        prev = -1
        for i in range(n):
            if (mask >> i) & 1:
                if prev >= 0:
                    total += dist_ranked[prev, i]
                else:
                    first = i
                prev = i
        if cyclic and prev != first:
            total += dist_ranked[prev, first]
        out[mask] = total
    return out


@njit(cache=True)
def best_ratio_by_size(tour, opt, n):
    """For each subset cardinality c, the worst tour/opt ratio and the mask
    attaining it.  Entries for c < 2 stay zero."""
    size = 1 << n
    best = np.zeros(n + 1)
    bmask = np.zeros(n + 1, np.int64)
    for mask in range(1, size):
        c = _popcount(mask)
        if c < 2:
            continue
        r = tour[mask] / opt[mask]
        if r > best[c]:
            best[c] = r
            bmask[c] = mask
    return best, bmask


@njit(cache=True)
def or_value_for_ranks(dist, opt, pts_by_rank, kmax):
    """Exact OR(kmax) for the order given by `pts_by_rank`, reusing a
    precomputed order-independent opt table (open paths)."""
    n = dist.shape[0]
    size = 1 << n
    best = 0.0
    for mask in range(1, size):
        c = _popcount(mask)
        if c < 2 or c > kmax + 1:
            continue
        lt = 0.0
        prev = -1
        for j in range(n):
            p = pts_by_rank[j]
            if (mask >> p) & 1:
                if prev >= 0:
                    lt += dist[prev, p]
                prev = p
        r = lt / opt[mask]
        if r > best:
            best = r
    return best


@njit(cache=True)
def subset_opt(dist, pts, m, cyclic, work):
    """Small Held-Karp on the m points `pts[:m]`; `work` is a scratch table of
    shape at least (1 << m, m)."""
    size = 1 << m
    for mask in range(size):
        for i in range(m):
            work[mask, i] = np.inf
    if cyclic:
        work[1, 0] = 0.0
        lo = 1
    else:
        for i in range(m):
            work[1 << i, i] = 0.0
        lo = 0
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        if cyclic and not mask & 1:
            continue
        for last in range(lo, m):
            if not (mask >> last) & 1:
                continue
            pm = mask ^ (1 << last)
            best = np.inf
            for prev in range(m):
                if (pm >> prev) & 1:
                    v = work[pm, prev] + dist[pts[prev], pts[last]]
                    if v < best:
                        best = v
            if best < work[mask, last]:
                work[mask, last] = best
    full = size - 1
    best = np.inf
    if cyclic:
        if m == 1:
            return 0.0
        for last in range(1, m):
            v = work[full, last] + dist[pts[last], pts[0]]
            if v < best:
                best = v
    else:
        for last in range(m):
            if work[full, last] < best:
                best = work[full, last]
    return best


@njit(cache=True)
def or_by_combinations(dist_ranked, kmax, cyclic):
    """Exact OR over all subsets of size 2..kmax+1 by direct enumeration.
    Returns (best ratio per size, witness tuple per size, subsets examined).
    The matrix must be rank-permuted."""
    n = dist_ranked.shape[0]
    best = np.zeros(kmax + 2)
    wit = -np.ones((kmax + 2, kmax + 1), np.int64)
    work = np.full((1 << (kmax + 1), kmax + 1), np.inf)
    comb = np.zeros(kmax + 1, np.int64)
    count = 0
    for m in range(2, min(kmax + 1, n) + 1):
        for i in range(m):
            comb[i] = i
        while True:
            lt = 0.0
            for i in range(m - 1):
                lt += dist_ranked[comb[i], comb[i + 1]]
            if cyclic:
                lt += dist_ranked[comb[m - 1], comb[0]]
            lo = subset_opt(dist_ranked, comb, m, cyclic, work)
            r = lt / lo
            count += 1
            if r > best[m]:
                best[m] = r
                for i in range(m):
                    wit[m, i] = comb[i]
            i = m - 1
            while i >= 0 and comb[i] == i + n - m:
                i -= 1
            if i < 0:
                break
            comb[i] += 1
            for j in range(i + 1, m):
                comb[j] = comb[j - 1] + 1
    return best, wit, count


@njit(cache=True)
def sampled_or(dist_ranked, kmax, n_samples, restarts, climb_steps, seed, cyclic):
    """Certified lower bound for OR(kmax): random subsets plus hill-climbing
    single-point swaps.  Returns (value, witness, witness size, examined)."""
    n = dist_ranked.shape[0]
    np.random.seed(seed)
    msize = min(kmax + 1, n)
    work = np.full((1 << msize, msize), np.inf)
    pts = np.zeros(msize, np.int64)
    cand = np.zeros(msize, np.int64)
    used = np.zeros(n, np.bool_)
    best = 0.0
    best_pts = np.zeros(msize, np.int64)
    best_m = 0
    examined = 0

    def _ratio(p, m):
        lt = 0.0
        for i in range(m - 1):
            lt += dist_ranked[p[i], p[i + 1]]
        if cyclic:
            lt += dist_ranked[p[m - 1], p[0]]
        return lt / subset_opt(dist_ranked, p, m, cyclic, work)

    for _ in range(n_samples):
        m = np.random.randint(2, msize + 1)
        for i in range(n):
            used[i] = False
        cnt = 0
        while cnt < m:
            x = np.random.randint(0, n)
            if not used[x]:
                used[x] = True
                pts[cnt] = x
                cnt += 1
        pts[:m].sort()
        r = _ratio(pts, m)
        examined += 1
        # greedy single-swap climb from every sample; proposals mix global
        # jumps with rank-local moves, which matter on hierarchical orders
        for _ in range(climb_steps):
            j = np.random.randint(0, m)
            if np.random.randint(0, 2) == 0:
                x = np.random.randint(0, n)
            else:
                x = pts[j] + np.random.randint(-4, 5)
                if x < 0 or x >= n:
                    continue
            ok = True
            for i in range(m):
                if i != j and pts[i] == x:
                    ok = False
            if not ok:
                continue
            for i in range(m):
                cand[i] = pts[i]
            cand[j] = x
            cand[:m].sort()
            r2 = _ratio(cand, m)
            examined += 1
            if r2 > r:
                r = r2
                for i in range(m):
                    pts[i] = cand[i]
        if r > best:
            best = r
            best_m = m
            for i in range(m):
                best_pts[i] = pts[i]

    for _ in range(restarts):
        if best_m == 0:
            break
        m = best_m
        for i in range(m):
            pts[i] = best_pts[i]
        cur = best
        for _ in range(climb_steps):
            j = np.random.randint(0, m)
            x = np.random.randint(0, n)
            ok = True
            for i in range(m):
                if i != j and pts[i] == x:
                    ok = False
            if not ok:
                continue
            for i in range(m):
                cand[i] = pts[i]
            cand[j] = x
            cand[:m].sort()
            r = _ratio(cand, m)
            examined += 1
            if r > cur:
                cur = r
                for i in range(m):
                    pts[i] = cand[i]
        if cur > best:
            best = cur
            for i in range(m):
                best_pts[i] = pts[i]
    return best, best_pts, best_m, examined


@njit(cache=True)
def best_snake3(dist_ranked):
    """Max-elongation snake on 3 points; returns (i, j, k, diam, width)."""
    n = dist_ranked.shape[0]
    bi = bj = bk = -1
    bd = 0.0
    bw = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                w = dist_ranked[i, k]
                d = max(dist_ranked[i, j], dist_ranked[j, k], w)
                if bi < 0 or d * bw > bd * w:
                    bi, bj, bk, bd, bw = i, j, k, d, w
    return bi, bj, bk, bd, bw


@njit(cache=True)
def best_snake4(dist_ranked):
    """Max-elongation snake on 4 points; returns (i, j, k, l, diam, width)."""
    n = dist_ranked.shape[0]
    bi = bj = bk = bl = -1
    bd = 0.0
    bw = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                w1 = dist_ranked[i, k]
                for l in range(k + 1, n):
                    w = max(w1, dist_ranked[j, l])
                    d = max(
                        dist_ranked[i, j],
                        dist_ranked[j, k],
                        dist_ranked[k, l],
                        w1,
                        dist_ranked[i, l],
                        dist_ranked[j, l],
                    )
                    if bi < 0 or d * bw > bd * w:
                        bi, bj, bk, bl, bd, bw = i, j, k, l, d, w
    return bi, bj, bk, bl, bd, bw


@njit(cache=True)
def widest_snake3(dist_ranked, width_cap):
    """Max diameter over 3-point snakes of width <= width_cap."""
    n = dist_ranked.shape[0]
    bi = bj = bk = -1
    bd = -1.0
    bw = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                w = dist_ranked[i, k]
                if w > width_cap:
                    continue
                d = max(dist_ranked[i, j], dist_ranked[j, k], w)
                if d > bd:
                    bi, bj, bk, bd, bw = i, j, k, d, w
    return bi, bj, bk, bd, bw


@njit(cache=True)
def widest_snake4(dist_ranked, width_cap):
    """Max diameter over 4-point snakes of width <= width_cap."""
    n = dist_ranked.shape[0]
    bi = bj = bk = bl = -1
    bd = -1.0
    bw = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                w1 = dist_ranked[i, k]
                if w1 > width_cap:
                    continue
                for l in range(k + 1, n):
                    w = max(w1, dist_ranked[j, l])
                    if w > width_cap:
                        continue
                    d = max(
                        dist_ranked[i, j],
                        dist_ranked[j, k],
                        dist_ranked[k, l],
                        w1,
                        dist_ranked[i, l],
                        dist_ranked[j, l],
                    )
                    if d > bd:
                        bi, bj, bk, bl, bd, bw = i, j, k, l, d, w
    return bi, bj, bk, bl, bd, bw
