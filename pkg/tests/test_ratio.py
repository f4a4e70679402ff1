import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordermetrics import (
    BudgetExceededError,
    TotalOrder,
    best_order_ratio,
    cyclic_order_ratio,
    or_profile,
    order_breakpoint,
    order_ratio,
    space,
)
from ordermetrics.builders import random_metric_space, random_order

SIX = [
    [0, 1, 1.5, 1.7, 1.5, 2],
    [1, 0, 1.8, 1.6, 1.5, 1.6],
    [1.5, 1.8, 0, 1, 1.7, 2],
    [1.7, 1.6, 1, 0, 1.3, 1.6],
    [1.5, 1.5, 1.7, 1.3, 0, 1.7],
    [2, 1.6, 2, 1.6, 1.7, 0],
]


def test_six_point_values():
    sp = space(SIX)
    t1 = TotalOrder.identity(6)
    assert order_ratio(sp, t1, 2).value == pytest.approx(1.12, abs=1e-9)
    assert order_ratio(sp, t1, 3).value == pytest.approx(1.1707317073170733, abs=1e-9)
    t3 = TotalOrder.from_sequence([2, 3, 4, 0, 1, 5])
    assert order_ratio(sp, t3, 3).value == pytest.approx(1.1463414634146343, abs=1e-9)


def test_k1_is_always_one():
    rng = np.random.default_rng(0)
    sp = random_metric_space(rng, 6)
    assert order_ratio(sp, random_order(rng, 6), 1).value == 1.0


def test_witness_attains_value():
    rng = np.random.default_rng(5)
    sp = random_metric_space(rng, 9)
    o = random_order(rng, 9)
    rep = order_ratio(sp, o, 4)
    from ordermetrics import opt_path_length
    from ordermetrics.orders import tour_length

    lt = tour_length(sp, o, rep.witness.points)
    lo = opt_path_length(rep.witness).length
    assert lt / lo == pytest.approx(rep.value, abs=1e-9)


def test_profile_nondecreasing_and_bounded():
    rng = np.random.default_rng(1)
    sp = random_metric_space(rng, 10)
    o = random_order(rng, 10)
    prev = 0.0
    for rep in or_profile(sp, o, 9):
        assert 1.0 - 1e-9 <= rep.value <= rep.k + 1e-9
        assert rep.value >= prev - 1e-12
        prev = rep.value


def test_budget_error_names_count():
    rng = np.random.default_rng(2)
    sp = random_metric_space(rng, 12)
    with pytest.raises(BudgetExceededError):
        order_ratio(sp, random_order(rng, 12), 6, budget=10)


def test_sampled_is_lower_bound_of_exact():
    rng = np.random.default_rng(3)
    sp = random_metric_space(rng, 10)
    o = random_order(rng, 10)
    exact = order_ratio(sp, o, 4).value
    sampled = order_ratio(sp, o, 4, mode="sampled", samples=300, seed=1).value
    assert sampled <= exact + 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_cyclic_sandwich_property(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    sp = random_metric_space(rng, n)
    o = random_order(rng, n)
    k = int(rng.integers(1, n))
    a = order_ratio(sp, o, k).value
    c = cyclic_order_ratio(sp, o, k).value
    assert 0.5 * a - 1e-9 <= c <= 2.0 * a + 1e-9


def test_best_order_small_space_reports_all_minimizers():
    sp = space(SIX)
    res = best_order_ratio(sp, 2)
    assert res.mode == "exact"
    seqs = {o.points_by_rank for o in res.orders}
    assert seqs == {(0, 1, 2, 3, 4, 5), (5, 4, 3, 2, 1, 0)}


def test_best_order_annealed_value_is_attained():
    rng = np.random.default_rng(7)
    sp = random_metric_space(rng, 10)
    res = best_order_ratio(sp, 3, seed=0)
    assert res.mode == "annealed"
    # the reported value belongs to the reported order
    check = order_ratio(sp, res.orders[0], 3).value
    assert check == pytest.approx(res.value, abs=1e-9)


def test_breakpoint_finite_space_is_two():
    # any finite space with >= 2 points has OR(2) < 2
    rng = np.random.default_rng(9)
    for _ in range(5):
        n = int(rng.integers(2, 9))
        sp = random_metric_space(rng, n)
        rep = order_breakpoint(sp, random_order(rng, n))
        assert rep.br == 2


def test_breakpoint_single_point():
    rep = order_breakpoint(space([[0.0]]), TotalOrder.identity(1))
    assert rep.br == 1
