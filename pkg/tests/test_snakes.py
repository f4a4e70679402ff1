import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordermetrics import TotalOrder, find_max_elongation_snake, max_diameter_snake, snake_metrics, snake_ratio_bound, space
from ordermetrics.builders import circle_space, random_metric_space, random_order


def test_bound_formula():
    assert snake_ratio_bound(3, 1.0, 0.01) == pytest.approx(2.8823529411764706)
    # zero width: the bound reaches s exactly
    assert snake_ratio_bound(4, 2.0, 0.0) == 4.0
    with pytest.raises(ValueError):
        snake_ratio_bound(3, 0.0, 0.1)
    with pytest.raises(ValueError):
        snake_ratio_bound(1, 1.0, 0.1)


def test_metrics_on_a_line():
    # 4 points on a line ordered 0-2-1-3: zigzag has small width
    sp = space([[0, 1, 2, 3], [1, 0, 1, 2], [2, 1, 0, 1], [3, 2, 1, 0]])
    o = TotalOrder.identity(4)
    sn = snake_metrics(sp, o, [0, 1, 2, 3])
    assert sn.diameter == 3.0
    assert sn.width == 2.0  # same-parity pairs (0,2) and (1,3)
    assert sn.elongation == 1.5


def test_metrics_requires_increasing_points():
    sp = space([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        snake_metrics(sp, TotalOrder.identity(2), [1, 0])


def test_two_point_snake_infinite_elongation():
    rng = np.random.default_rng(0)
    sp = random_metric_space(rng, 6)
    sn = find_max_elongation_snake(sp, random_order(rng, 6), 2)
    assert sn.width == 0.0
    assert sn.elongation == math.inf


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_exact_search_beats_any_manual_triple(seed):
    rng = np.random.default_rng(seed)
    n = 8
    sp = random_metric_space(rng, n)
    o = random_order(rng, n)
    best = find_max_elongation_snake(sp, o, 3)
    pts = sorted(rng.choice(n, 3, replace=False).tolist(), key=lambda p: o.rank[p])
    manual = snake_metrics(sp, o, pts)
    assert best.elongation >= manual.elongation - 1e-12


def test_circle_reverse_order_has_thin_triple():
    # walking the circle clockwise then checking an order that alternates
    sp, clock = circle_space(8, 1.0)
    o = TotalOrder.from_sequence([0, 4, 1, 5, 2, 6, 3, 7])
    sn = max_diameter_snake(sp, o, 3, 1.0 / 8 + 1e-9)
    assert sn is not None
    assert sn.diameter >= 3.0 / 8 - 1e-9


def test_width_cap_none_when_unsatisfiable():
    sp = space([[0, 5, 5], [5, 0, 5], [5, 5, 0]])
    assert max_diameter_snake(sp, TotalOrder.identity(3), 3, 0.1) is None


def test_snake_points_follow_order():
    rng = np.random.default_rng(4)
    sp = random_metric_space(rng, 9)
    o = random_order(rng, 9)
    for s in (3, 4, 5):
        sn = find_max_elongation_snake(sp, o, s)
        ranks = [o.rank[p] for p in sn.points]
        assert ranks == sorted(ranks)
        assert len(sn.points) == s
