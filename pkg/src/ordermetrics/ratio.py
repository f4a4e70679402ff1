"""Order ratio functions, best orders, and the order breakpoint."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import exact
from .metric import MetricSpace
from .orders import TotalOrder, ranked_matrix
from .tours import SubsetInstance

FULL_DP_CAP = 16  # above this, exact mode enumerates subsets directly
BEST_ORDER_CAP = 8  # n! enumeration bound for the exact infimum over orders
DEFAULT_BUDGET = 20_000_000
DEFAULT_SAMPLES = 10_000
DEFAULT_RESTARTS = 100
DEFAULT_CLIMB_STEPS = 50
BR_GAP = 1e-6


class BudgetExceededError(RuntimeError):
    def __init__(self, count, budget):
        self.count = count
        super().__init__(
            f"exact mode needs {count} subsets, over the budget of {budget}; "
            "raise the budget or use sampled mode"
        )


@dataclass(frozen=True)
class ORReport:
    k: int
    value: float
    witness: SubsetInstance | None
    mode: str  # exact | sampled
    subsets_examined: int
    cyclic: bool = False
    seed: int | None = None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "value": self.value,
            "witness": sorted(self.witness.points) if self.witness else None,
            "mode": self.mode,
            "subsets_examined": self.subsets_examined,
            "cyclic": self.cyclic,
            "seed": self.seed,
        }


def _subset_count(n: int, kmax: int) -> int:
    return sum(math.comb(n, m) for m in range(2, min(kmax + 1, n) + 1))


def _exact_by_size(space: MetricSpace, order: TotalOrder, kmax: int, cyclic: bool,
                   budget: int):
    """Worst ratio and witness per subset size 2..min(kmax+1, n), exact."""
    n = space.n
    count = _subset_count(n, kmax)
    if count > budget:
        raise BudgetExceededError(count, budget)
    dr = ranked_matrix(space, order)
    pts = order.points_by_rank
    top = min(kmax + 1, n)
    if n <= FULL_DP_CAP:
        if cyclic:
            opt = exact.opt_cycle_per_mask(exact.anchored_path_dp(dr), dr)
        else:
            opt = exact.opt_path_per_mask(exact.path_dp(dr))
        tour = exact.tour_per_mask(dr, cyclic)
        best, bmask = exact.best_ratio_by_size(tour, opt, n)
        out = {}
        for m in range(2, top + 1):
            wit = tuple(pts[i] for i in range(n) if (int(bmask[m]) >> i) & 1)
            out[m] = (float(best[m]), wit)
        return out, count
    best, wit, examined = exact.or_by_combinations(dr, kmax, cyclic)
    out = {}
    for m in range(2, top + 1):
        w = tuple(pts[int(i)] for i in wit[m][:m] if i >= 0)
        out[m] = (float(best[m]), w)
    return out, examined


def or_profile(space: MetricSpace, order: TotalOrder, kmax: int | None = None,
               cyclic: bool = False, budget: int = DEFAULT_BUDGET) -> list[ORReport]:
    """Exact OR(k) (or the cyclic variant) for every k = 1..kmax at once."""
    n = space.n
    if kmax is None:
        kmax = n - 1
    if n < 2:
        return [ORReport(k, 1.0, None, "exact", 0, cyclic) for k in range(1, kmax + 1)]
    by_size, examined = _exact_by_size(space, order, kmax, cyclic, budget)
    reports = []
    value, wit = 0.0, None
    for k in range(1, kmax + 1):
        m = k + 1
        if m in by_size and by_size[m][0] > value:
            value, wit = by_size[m]
        reports.append(
            ORReport(k, value, SubsetInstance(space, wit) if wit else None,
                     "exact", examined, cyclic)
        )
    return reports


def order_ratio(space: MetricSpace, order: TotalOrder, k: int, mode: str = "exact",
                cyclic: bool = False, budget: int = DEFAULT_BUDGET,
                samples: int = DEFAULT_SAMPLES, restarts: int = DEFAULT_RESTARTS,
                climb_steps: int = DEFAULT_CLIMB_STEPS, seed: int = 0) -> ORReport:
    """OR_{M,T}(k).  Exact mode enumerates all subsets of size 2..k+1 (true
    supremum, attained witness); sampled mode returns a certified lower
    bound found by random subsets plus hill-climbing swaps."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = space.n
    if n < 2:
        return ORReport(k, 1.0, None, "exact", 0, cyclic)
    if mode == "exact":
        return or_profile(space, order, k, cyclic, budget)[-1]
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    dr = ranked_matrix(space, order)
    value, wpts, wm, examined = exact.sampled_or(
        dr, k, samples, restarts, climb_steps, seed, cyclic
    )
    pts = order.points_by_rank
    wit = None
    if wm >= 2:
        wit = SubsetInstance(space, tuple(pts[int(i)] for i in wpts[:wm]))
    return ORReport(k, float(value), wit, "sampled", int(examined), cyclic, seed)


def cyclic_order_ratio(space, order, k, mode="exact", **kw) -> ORReport:
    return order_ratio(space, order, k, mode, cyclic=True, **kw)


@dataclass(frozen=True)
class BestOrderResult:
    value: float
    orders: tuple[TotalOrder, ...]  # all minimizers in exact mode
    mode: str  # exact | annealed
    orders_examined: int


def best_order_ratio(space: MetricSpace, k: int, seed: int = 0,
                     anneal_steps: int = 2000, tol: float = 1e-9) -> BestOrderResult:
    """inf_T OR_{M,T}(k).  Exact (all n! orders, every minimizer reported)
    for n <= 8; otherwise simulated annealing yields an upper bound."""
    n = space.n
    if n < 2:
        return BestOrderResult(1.0, (TotalOrder.identity(n),), "exact", 1)
    dist = np.ascontiguousarray(space.dist)
    opt = exact.opt_path_per_mask(exact.path_dp(dist))
    if n <= BEST_ORDER_CAP:
        best = math.inf
        minimizers = []
        for perm in itertools.permutations(range(n)):
            v = float(exact.or_value_for_ranks(dist, opt, np.asarray(perm), k))
            if v < best - tol:
                best = v
                minimizers = [perm]
            elif v <= best + tol:
                minimizers.append(perm)
        orders = tuple(TotalOrder.from_sequence(p) for p in minimizers)
        return BestOrderResult(best, orders, "exact", math.factorial(n))

    rng = np.random.default_rng(seed)
    cur = list(rng.permutation(n))
    cur_v = float(exact.or_value_for_ranks(dist, opt, np.asarray(cur), k))
    best, best_perm = cur_v, list(cur)
    t0, t1 = 0.5, 1e-3
    for step in range(anneal_steps):
        t = t0 * (t1 / t0) ** (step / max(anneal_steps - 1, 1))
        i, j = rng.integers(0, n, 2)
        if i == j:
            continue
        cand = list(cur)
        cand[i], cand[j] = cand[j], cand[i]
        v = float(exact.or_value_for_ranks(dist, opt, np.asarray(cand), k))
        if v < cur_v or rng.random() < math.exp((cur_v - v) / t):
            cur, cur_v = cand, v
            if v < best:
                best, best_perm = v, list(cand)
    return BestOrderResult(
        best, (TotalOrder.from_sequence(best_perm),), "annealed", anneal_steps
    )


@dataclass
class BreakpointReport:
    br: int | None  # None = not determined at max_s
    per_s: dict = field(default_factory=dict)  # s -> exact OR(s)
    witness_snakes: dict = field(default_factory=dict)  # s -> best Snake on s+1 pts
    mode: str = "exact"

    def to_json(self) -> dict:
        return {
            "br": self.br,
            "per_s": {str(s): v for s, v in self.per_s.items()},
            "witness_snakes": {
                str(s): sn.to_json() for s, sn in self.witness_snakes.items()
            },
            "mode": self.mode,
        }


def order_breakpoint(space: MetricSpace, order: TotalOrder, max_s: int | None = None,
                     elongation_threshold: float = 100.0,
                     budget: int = DEFAULT_BUDGET) -> BreakpointReport:
    """Smallest s with OR_{M,T}(s) < s, plus per-s elongation evidence.

    For a finite window of an infinite space the br field is still the
    window's own breakpoint; large witness elongations flag the values of s
    where the ambient space plausibly attains OR(s) = s.
    """
    from .snakes import find_max_elongation_snake

    n = space.n
    if n <= 1:
        return BreakpointReport(br=1)
    if max_s is None:
        max_s = min(n - 1, 6)
    profile = or_profile(space, order, max_s, budget=budget)
    rep = BreakpointReport(br=None)
    for s in range(2, max_s + 1):
        val = profile[s - 1].value
        rep.per_s[s] = val
        if rep.br is None and val < s - BR_GAP:
            rep.br = s
        if s + 1 <= n:
            snake = find_max_elongation_snake(space, order, s + 1)
            rep.witness_snakes[s] = snake
    return rep
