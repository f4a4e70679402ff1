"""Exact optimal open paths and closed tours on point subsets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact
from .metric import ABS_TOL, MetricSpace

EXACT_POINT_CAP = 18


class SubsetTooLargeError(ValueError):
    def __init__(self, size, cap):
        super().__init__(
            f"subset of {size} points exceeds the exact-mode cap of {cap}; "
            "use sampled order-ratio mode instead"
        )


@dataclass(frozen=True)
class SubsetInstance:
    space: MetricSpace
    points: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(int(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("subset points must be pairwise distinct")
        if any(p < 0 or p >= self.space.n for p in pts):
            raise ValueError("subset point index out of range")
        if len(pts) < 2:
            raise ValueError("subset needs at least 2 points")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return len(self.points)

    def submatrix(self) -> np.ndarray:
        idx = np.asarray(sorted(self.points))
        return np.ascontiguousarray(self.space.dist[np.ix_(idx, idx)])


@dataclass(frozen=True)
class PathResult:
    length: float
    sequence: tuple[int, ...]


def opt_path_length(inst: SubsetInstance, cap: int = EXACT_POINT_CAP) -> PathResult:
    """Minimal open-path length over all orderings of the subset, by bitmask
    DP.  Ties break to the lexicographically smallest optimal sequence."""
    m = inst.size
    if m > cap:
        raise SubsetTooLargeError(m, cap)
    pts = sorted(inst.points)
    sub = inst.submatrix()
    D = exact.path_dp(sub)
    full = (1 << m) - 1
    length = float(D[full].min())
    # greedy lexicographic reconstruction: a path starting at p reversed is a
    # path ending at p, so D[mask, p] is also the best completion cost from p
    seq = []
    rem = full
    cur = -1
    acc = 0.0
    for _ in range(m):
        for q in range(m):
            if not (rem >> q) & 1:
                continue
            step = 0.0 if cur < 0 else sub[cur, q]
            if acc + step + D[rem, q] <= length + ABS_TOL:
                seq.append(q)
                acc += step
                cur = q
                rem ^= 1 << q
                break
    return PathResult(length, tuple(pts[i] for i in seq))


def opt_cycle_length(inst: SubsetInstance, cap: int = EXACT_POINT_CAP) -> PathResult:
    """Minimal closed-tour length; the returned sequence starts at the
    smallest point index and is the lexicographically smallest optimal
    representative (covering both rotation and reflection)."""
    m = inst.size
    if m > cap:
        raise SubsetTooLargeError(m, cap)
    pts = sorted(inst.points)
    sub = inst.submatrix()
    D = exact.anchored_path_dp(sub)
    full = (1 << m) - 1
    length = min(
        float(D[full, last] + sub[last, 0]) for last in range(1, m)
    )
    seq = [0]
    rem = full ^ 1
    cur = 0
    acc = 0.0
    for _ in range(m - 1):
        for q in range(1, m):
            if not (rem >> q) & 1:
                continue
            # completion from q through the rest and back to 0 equals, by
            # reversal, the anchored path over rem|1 ending at q
            if acc + sub[cur, q] + D[rem | 1, q] <= length + ABS_TOL:
                seq.append(q)
                acc += sub[cur, q]
                cur = q
                rem ^= 1 << q
                break
    return PathResult(length, tuple(pts[i] for i in seq))


def brute_path_length(inst: SubsetInstance) -> float:
    """Independent oracle: exhaustive permutation enumeration."""
    from itertools import permutations

    d = inst.space.dist
    return min(
        sum(d[p[i], p[i + 1]] for i in range(len(p) - 1))
        for p in permutations(inst.points)
    )


def brute_cycle_length(inst: SubsetInstance) -> float:
    from itertools import permutations

    d = inst.space.dist
    first = inst.points[0]
    rest = inst.points[1:]
    best = np.inf
    for p in permutations(rest):
        seq = (first,) + p
        ln = sum(d[seq[i], seq[i + 1]] for i in range(len(seq) - 1)) + d[seq[-1], first]
        best = min(best, ln)
    return float(best)
