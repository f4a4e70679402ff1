"""Snakes: diameter/width metrics and adversarial snake search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import exact
from .metric import MetricSpace
from .orders import TotalOrder, ranked_matrix

EXACT_TUPLE_BUDGET = 2_000_000
DEFAULT_ANNEAL_STEPS = 100_000


@dataclass(frozen=True)
class Snake:
    """T-increasing point sequence; width is the largest distance between
    same-parity positions, elongation = diameter / width (math.inf when the
    width is zero)."""

    points: tuple[int, ...]
    diameter: float
    width: float

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def elongation(self) -> float:
        return math.inf if self.width == 0 else self.diameter / self.width

    def to_json(self) -> dict:
        return {
            "points": list(self.points),
            "diameter": self.diameter,
            "width": self.width,
            "elongation": None if self.width == 0 else self.elongation,
        }


def snake_metrics(space: MetricSpace, order: TotalOrder, points) -> Snake:
    """Exact diameter/width of a T-increasing sequence."""
    pts = tuple(int(p) for p in points)
    if len(pts) < 2:
        raise ValueError("a snake needs at least 2 points")
    ranks = [order.rank[p] for p in pts]
    if any(ranks[i] >= ranks[i + 1] for i in range(len(ranks) - 1)):
        raise ValueError("snake points must be strictly increasing in the order")
    d = space.dist
    diam = max(d[a, b] for a, b in combinations(pts, 2))
    width = 0.0
    for i, j in combinations(range(len(pts)), 2):
        if (j - i) % 2 == 0:
            width = max(width, d[pts[i], pts[j]])
    return Snake(pts, float(diam), float(width))


def snake_ratio_bound(s: int, a: float, b: float) -> float:
    """OR(s) lower bound certified by a snake on s+1 points of diameter a and
    width b: s(a-2b)/(a+(s-1)b)."""
    if a <= 0:
        raise ValueError("snake diameter must be positive")
    if b < 0 or s < 2:
        raise ValueError("need width >= 0 and s >= 2")
    return s * (a - 2 * b) / (a + (s - 1) * b)


def _from_ranked(order: TotalOrder, ranked_pts, diam, width) -> Snake:
    pts = order.points_by_rank
    return Snake(tuple(pts[int(i)] for i in ranked_pts), float(diam), float(width))


def _exact_generic(dr: np.ndarray, s: int) -> tuple[tuple, float, float]:
    n = dr.shape[0]
    best = None
    for tup in combinations(range(n), s):
        diam = max(dr[a, b] for a, b in combinations(tup, 2))
        width = 0.0
        for i, j in combinations(range(s), 2):
            if (j - i) % 2 == 0:
                width = max(width, dr[tup[i], tup[j]])
        key = math.inf if width == 0 else diam / width
        if best is None or key > best[0] or (key == best[0] and diam > best[2]):
            best = (key, tup, diam, width)
    return best[1], best[2], best[3]


def find_max_elongation_snake(space: MetricSpace, order: TotalOrder, s: int,
                              budget: int = EXACT_TUPLE_BUDGET, seed: int = 0,
                              anneal_steps: int = DEFAULT_ANNEAL_STEPS) -> Snake:
    """Maximum-elongation snake on s points.  Exact when the tuple count fits
    the budget (always attempted for s in {3, 4} on desk-scale spaces),
    otherwise simulated annealing with the recorded seed."""
    n = space.n
    if s < 2 or s > n:
        raise ValueError(f"need 2 <= s <= n, got s={s}, n={n}")
    dr = ranked_matrix(space, order)
    if s == 2:
        # any pair: width 0, pick the widest-apart pair for a maximal diameter
        i, j = np.unravel_index(np.argmax(dr), dr.shape)
        i, j = int(min(i, j)), int(max(i, j))
        return _from_ranked(order, (i, j), dr[i, j], 0.0)
    if s == 3 and math.comb(n, 3) <= budget:
        i, j, k, d, w = exact.best_snake3(dr)
        return _from_ranked(order, (i, j, k), d, w)
    if s == 4 and math.comb(n, 4) <= budget:
        i, j, k, l, d, w = exact.best_snake4(dr)
        return _from_ranked(order, (i, j, k, l), d, w)
    if math.comb(n, s) <= min(budget, 200_000):
        tup, d, w = _exact_generic(dr, s)
        return _from_ranked(order, tup, d, w)
    return _anneal_snake(space, order, dr, s, seed, anneal_steps)


def _snake_key(dr, tup):
    diam = max(dr[a, b] for a, b in combinations(tup, 2))
    width = 0.0
    for i, j in combinations(range(len(tup)), 2):
        if (j - i) % 2 == 0:
            width = max(width, dr[tup[i], tup[j]])
    return (math.inf if width == 0 else diam / width), diam, width


def _anneal_snake(space, order, dr, s, seed, steps):
    """Neighborhood: swap one snake point for a random point with a
    compatible rank; geometric temperature schedule."""
    n = dr.shape[0]
    rng = np.random.default_rng(seed)
    cur = sorted(rng.choice(n, size=s, replace=False).tolist())
    cur_key = _snake_key(dr, cur)
    best, best_key = list(cur), cur_key
    t0, t1 = 1.0, 1e-3
    for step in range(steps):
        t = t0 * (t1 / t0) ** (step / max(steps - 1, 1))
        j = int(rng.integers(0, s))
        lo = cur[j - 1] + 1 if j > 0 else 0
        hi = cur[j + 1] if j < s - 1 else n
        if hi - lo <= 1:
            continue
        x = int(rng.integers(lo, hi))
        if x == cur[j]:
            continue
        cand = list(cur)
        cand[j] = x
        key = _snake_key(dr, cand)
        e_cur = cur_key[0] if cur_key[0] != math.inf else 1e18
        e_new = key[0] if key[0] != math.inf else 1e18
        if e_new >= e_cur or rng.random() < math.exp((e_new - e_cur) / (t * max(e_cur, 1e-9))):
            cur, cur_key = cand, key
            if key > best_key:
                best, best_key = list(cand), key
    return _from_ranked(order, best, best_key[1], best_key[2])


def max_diameter_snake(space: MetricSpace, order: TotalOrder, s: int,
                       width_cap: float) -> Snake | None:
    """Exact max-diameter snake on s points subject to width <= width_cap;
    None when no such snake exists.  Supported for s in {3, 4}."""
    dr = ranked_matrix(space, order)
    if s == 3:
        i, j, k, d, w = exact.widest_snake3(dr, width_cap)
        return None if i < 0 else _from_ranked(order, (i, j, k), d, w)
    if s == 4:
        i, j, k, l, d, w = exact.widest_snake4(dr, width_cap)
        return None if i < 0 else _from_ranked(order, (i, j, k, l), d, w)
    raise ValueError("width-capped exact search supports s = 3 or 4")
