import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ordermetrics import (
    DisconnectedGraphError,
    FormatError,
    MetricSpace,
    load_space,
    shortest_path_metric,
    space,
    space_from_json,
    validate_metric,
)


def test_space_basic():
    sp = space([[0, 1], [1, 0]], labels=["a", "b"])
    assert sp.n == 2
    assert sp.index("b") == 1
    assert sp.diameter() == 1.0


def test_space_rejects_bad_shapes():
    with pytest.raises(FormatError):
        space([[0, 1, 2], [1, 0, 1]])
    with pytest.raises(FormatError):
        space([[0, 1], [1, 0]], labels=["only-one"])
    with pytest.raises(FormatError):
        space([[0, -1], [-1, 0]])


def test_matrix_is_immutable():
    sp = space([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        sp.dist[0, 1] = 5.0


def test_validate_flags_triangle_violation():
    bad = [[0, 1, 3], [1, 0, 1], [3, 1, 0]]
    rep = validate_metric(space(bad))
    assert not rep.valid
    assert any(v.kind == "triangle" for v in rep.violations)


def test_validate_flags_asymmetry_and_diagonal():
    m = np.array([[0.5, 1.0], [2.0, 0.0]])
    rep = validate_metric(MetricSpace(("a", "b"), np.maximum(m, 0)))
    kinds = {v.kind for v in rep.violations}
    assert "diagonal" in kinds and "symmetry" in kinds


def test_shortest_path_metric_triangle_free():
    # path a-b-c with weights 1, 2: d(a,c) = 3
    sp = shortest_path_metric([(0, 1, 1.0), (1, 2, 2.0)], labels=["a", "b", "c"])
    assert sp.dist[0, 2] == pytest.approx(3.0)
    assert validate_metric(sp).valid


def test_disconnected_graph_names_components():
    with pytest.raises(DisconnectedGraphError):
        shortest_path_metric([(0, 1, 1.0), (2, 3, 1.0)], n=4)


def test_json_roundtrip(tmp_path):
    sp = space([[0, 2], [2, 0]], labels=["x", "y"])
    p = tmp_path / "sp.json"
    p.write_text(json.dumps(sp.to_json()))
    again = load_space(p)
    assert again.labels == sp.labels
    assert np.allclose(again.dist, sp.dist)


def test_edges_schema():
    sp = space_from_json({"labels": ["a", "b"], "edges": [[0, 1, 2.5]]})
    assert sp.dist[0, 1] == 2.5


@given(st.integers(2, 8), st.integers(0, 10_000))
def test_random_uniform_distances_are_metric(n, seed):
    # entries in [1, 2] always satisfy the triangle inequality
    rng = np.random.default_rng(seed)
    a = rng.uniform(1, 2, (n, n))
    d = np.triu(a, 1)
    d = d + d.T
    assert validate_metric(space(d)).valid
