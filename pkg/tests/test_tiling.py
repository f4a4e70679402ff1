import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordermetrics.builders import is_convex
from ordermetrics.tiling import (
    DisconnectedWindowError,
    Tile,
    are_close,
    branch_convex_order,
    build_window,
    hyperbolic_distance,
    in_branch,
    multiplicity_audit,
    neighbors,
    quasi_geodesic_fit,
    rescale,
    standard_up_down_path,
    tile_distance,
    translate,
    window_from_tiles,
)


def test_neighbor_count_and_levels():
    for d in (1, 2, 3):
        t = Tile(2, (3,) * d)
        nb = neighbors(t)
        assert len(set(nb)) == 2 * d + 2 ** d + 1
        assert sum(1 for x in nb if x.k == 3) == 1
        assert sum(1 for x in nb if x.k == 1) == 2 ** d


def test_parent_child_consistency():
    t = Tile(0, (5, -3))
    assert t.parent == Tile(1, (2, -2))
    assert t in neighbors(t.parent)


def test_center():
    assert Tile(1, (0,)).center == (3.0, 1.0)
    assert Tile(0, (2,)).center == (1.5, 2.5)


def test_hyperbolic_distance_formula():
    # points one above the other: distance is the log of the height ratio
    assert hyperbolic_distance((1, 0), (4, 0)) == pytest.approx(math.log(4))
    assert hyperbolic_distance((2, 1), (2, 1)) == 0.0
    with pytest.raises(ValueError):
        hyperbolic_distance((0, 0), (1, 0))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_distance_invariance(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 4))
    t1 = Tile(int(rng.integers(-2, 3)), tuple(int(x) for x in rng.integers(-8, 9, d)))
    t2 = Tile(int(rng.integers(-2, 3)), tuple(int(x) for x in rng.integers(-8, 9, d)))
    base = tile_distance(t1, t2)
    lvl = max(t1.k, t2.k)
    a = tuple(int(x) for x in rng.integers(-5, 6, d))
    k = int(rng.integers(-3, 4))
    m1 = rescale(translate(t1, a, lvl), k)
    m2 = rescale(translate(t2, a, lvl), k)
    assert tile_distance(m1, m2) == pytest.approx(base, abs=1e-9)


def test_branch_membership():
    root = Tile(3, (1,))
    assert in_branch(root, root)
    assert in_branch(Tile(0, (8,)), root)
    assert in_branch(Tile(0, (15,)), root)
    assert not in_branch(Tile(0, (16,)), root)
    assert not in_branch(root.parent, root)


def test_up_down_path_endpoints_and_shape():
    t1, t2 = Tile(0, (1,)), Tile(0, (6,))
    p = standard_up_down_path(t1, t2)
    assert p.tiles[0] == t1 and p.tiles[-1] == t2
    assert p.horizontal_count <= 1  # at most d horizontal steps
    # tiles at the turn are close
    top = [t for t in p.tiles if t.k == max(x.k for x in p.tiles)]
    assert are_close(top[0], top[-1])


def test_path_between_adjacent_tiles_is_one_step():
    p = standard_up_down_path(Tile(0, (4,)), Tile(0, (5,)))
    assert p.length == 1


def test_window_build_and_metric():
    w = build_window(1, 3, 4)
    assert w.n == 4 + 2 + 1
    sp = w.space()
    i, j = w.index[Tile(0, (0,))], w.index[Tile(0, (3,))]
    assert sp.dist[i, j] == 3  # along the bottom, or up and over in 3 steps


def test_window_rejects_disconnected():
    with pytest.raises(DisconnectedWindowError):
        window_from_tiles(1, [Tile(0, (0,)), Tile(0, (5,))])


def test_single_column_order_is_by_level():
    w = window_from_tiles(1, [Tile(k, (0,)) for k in range(4)])
    o = branch_convex_order(w)
    seq = [w.tiles[p].k for p in o.points_by_rank]
    assert seq == [3, 2, 1, 0]


def test_branch_convex_order_makes_branches_convex():
    w = build_window(1, 4, 8)
    o = branch_convex_order(w)
    for i, root in enumerate(w.tiles):
        members = [j for j, t in enumerate(w.tiles) if in_branch(t, root)]
        assert is_convex(o, members)


def test_multiplicity_zero_violations_small_window():
    w = build_window(1, 5, 16)
    o = branch_convex_order(w)
    rng = np.random.default_rng(0)
    for _ in range(50):
        sub = rng.choice(w.n, 8, replace=False).tolist()
        rep = multiplicity_audit(w, o, sub)
        assert rep.ok


def test_quasi_geodesic_fit_bounds_all_pairs():
    w = build_window(1, 4, 8)
    fit = quasi_geodesic_fit(w)
    for i in range(w.n):
        for j in range(i + 1, w.n):
            p = standard_up_down_path(w.tiles[i], w.tiles[j])
            assert p.length <= fit.a * w.graph_dist[i, j] + fit.b + 1e-9


def test_vertical_forest_components():
    assert Tile(0, (3,)).component == (0,)
    assert Tile(0, (-3,)).component == (-1,)
    assert Tile(2, (1, -4)).component == (0, -1)
