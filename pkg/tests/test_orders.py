import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordermetrics import TotalOrder, cyclic_shift, cyclic_tour_length, load_order, pullback_order, space, tour_length
from ordermetrics.builders import random_metric_space, random_order
from ordermetrics.orders import ranked_matrix


def test_rank_bijection_enforced():
    with pytest.raises(ValueError):
        TotalOrder((0, 0, 1))
    with pytest.raises(ValueError):
        TotalOrder((1, 2, 3))


def test_from_sequence_inverts_points_by_rank():
    o = TotalOrder.from_sequence([2, 0, 1])
    assert o.points_by_rank == (2, 0, 1)
    assert o.rank == (1, 2, 0)


def test_tour_lengths():
    sp = space([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    o = TotalOrder.identity(3)
    assert tour_length(sp, o, [0, 1, 2]) == 2.0
    assert cyclic_tour_length(sp, o, [0, 1, 2]) == 4.0
    # order is what matters, not the listing of the subset
    assert tour_length(sp, o, [2, 0, 1]) == 2.0


def test_cyclic_shift_minimal_element():
    o = TotalOrder.from_sequence([3, 1, 0, 2])
    s = cyclic_shift(o, 0)
    assert s.points_by_rank == (0, 2, 3, 1)
    assert s.rank[0] == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 9))
def test_cyclic_shift_preserves_cyclic_tours(seed, n):
    rng = np.random.default_rng(seed)
    sp = random_metric_space(rng, n)
    o = random_order(rng, n)
    x = int(rng.integers(0, n))
    pts = sorted(rng.choice(n, int(rng.integers(2, n + 1)), replace=False).tolist())
    shifted = cyclic_shift(o, x)
    # a cyclic shift rotates every subset's visiting cycle, so closed tour
    # lengths never change
    assert cyclic_tour_length(sp, shifted, pts) == pytest.approx(
        cyclic_tour_length(sp, o, pts), abs=1e-9
    )


def test_ranked_matrix_permutes():
    sp = space([[0, 5, 7], [5, 0, 11], [7, 11, 0]])
    o = TotalOrder.from_sequence([2, 0, 1])
    dr = ranked_matrix(sp, o)
    assert dr[0, 1] == sp.dist[2, 0]
    assert dr[1, 2] == sp.dist[0, 1]


def test_pullback_respects_image_order():
    # phi collapses 4 points onto 2; the image order decides between fibers
    phi = [1, 0, 1, 0]
    order_m = TotalOrder.from_sequence([1, 0])  # codomain point 1 first
    tie = TotalOrder.identity(4)
    t = pullback_order(phi, order_m, tie)
    for i in range(4):
        for j in range(4):
            if order_m.rank[phi[i]] < order_m.rank[phi[j]]:
                assert t.rank[i] < t.rank[j]


def test_order_file_roundtrip(tmp_path):
    sp = space([[0, 1], [1, 0]], labels=["p", "q"])
    p = tmp_path / "order.json"
    p.write_text(json.dumps(["q", "p"]))
    o = load_order(p, sp)
    assert o.points_by_rank == (1, 0)
    p.write_text(json.dumps(["q", "nope"]))
    with pytest.raises(ValueError):
        load_order(p, sp)
