import pytest
from fastapi.testclient import TestClient

from ordermetrics.service import create_app

SIX = {
    "labels": ["1", "2", "3", "4", "5", "6"],
    "matrix": [
        [0, 1, 1.5, 1.7, 1.5, 2],
        [1, 0, 1.8, 1.6, 1.5, 1.6],
        [1.5, 1.8, 0, 1, 1.7, 2],
        [1.7, 1.6, 1, 0, 1.3, 1.6],
        [1.5, 1.5, 1.7, 1.3, 0, 1.7],
        [2, 1.6, 2, 1.6, 1.7, 0],
    ],
}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_space_validate(client):
    r = client.post("/space/validate", json=SIX)
    assert r.status_code == 200
    assert r.json()["valid"]


def test_space_validate_bad(client):
    bad = {"matrix": [[0, 1, 9], [1, 0, 1], [9, 1, 0]]}
    doc = client.post("/space/validate", json=bad).json()
    assert not doc["valid"]
    assert doc["violations"][0]["kind"] == "triangle"


def test_space_needs_matrix_or_edges(client):
    assert client.post("/space/validate", json={"labels": ["a"]}).status_code == 422


def test_from_graph(client):
    r = client.post("/space/from-graph",
                    json={"labels": ["a", "b", "c"],
                          "edges": [[0, 1, 1], [1, 2, 2]]})
    assert r.json()["matrix"][0][2] == 3.0


def test_tours(client):
    r = client.post("/tours/compute",
                    json={"space": SIX, "points": ["1", "2", "6"]})
    doc = r.json()
    assert doc["length"] == pytest.approx(2.6)
    assert doc["sequence"] == ["1", "2", "6"]


def test_or_compute_profile(client):
    r = client.post("/or/compute", json={"space": SIX, "k": 3, "profile": True})
    vals = [rep["value"] for rep in r.json()["reports"]]
    assert vals == pytest.approx([1.0, 1.12, 1.1707317073170733])


def test_or_compute_with_order(client):
    r = client.post("/or/compute", json={
        "space": SIX, "k": 3, "order": ["3", "4", "5", "1", "2", "6"]})
    assert r.json()["reports"][0]["value"] == pytest.approx(1.1463414634146343)


def test_or_bad_order_rejected(client):
    r = client.post("/or/compute", json={"space": SIX, "k": 2, "order": ["1"]})
    assert r.status_code == 400


def test_or_best(client):
    doc = client.post("/or/best", json={"space": SIX, "k": 2}).json()
    assert sorted(doc["orders"])[0] == ["1", "2", "3", "4", "5", "6"]
    assert doc["value"] == pytest.approx(1.12)


def test_br(client):
    doc = client.post("/br/compute", json={"space": SIX}).json()
    assert doc["br"] == 2


def test_snake_endpoints(client):
    doc = client.post("/snake/find", json={"space": SIX, "s": 3}).json()
    assert len(doc["points"]) == 3
    doc2 = client.post("/snake/metrics",
                       json={"space": SIX, "points": doc["points"]}).json()
    assert doc2["diameter"] == pytest.approx(doc["diameter"])
    bound = client.post("/snake/bound", json={"s": 3, "a": 1, "b": 0.01}).json()
    assert bound["bound"] == pytest.approx(2.8823529411764706)


def test_gen_and_unknown_kind(client):
    doc = client.post("/gen", json={"kind": "circle", "params": {"n": 6}}).json()
    assert len(doc["labels"]) == 6
    assert doc["order"] is not None
    assert client.post("/gen", json={"kind": "bogus"}).status_code == 400


def test_tiling_window_and_path(client):
    doc = client.post("/tiling/window",
                      json={"d": 1, "levels": 3, "span": 4, "dot": True}).json()
    assert doc["n"] == 7
    assert doc["dot"].startswith("graph tiling")
    p = client.post("/tiling/path", json={
        "t1": {"k": 0, "a": [1]}, "t2": {"k": 0, "a": [6]}}).json()
    assert p["tiles"][0] == [0, [1]]
    assert p["up"] >= 1 and p["down"] >= 1


def test_tiling_audit(client):
    doc = client.post("/tiling/audit", json={
        "d": 1, "levels": 4, "span": 8, "samples": 10, "size": 6}).json()
    assert doc["all_ok"]


def test_experiments_run_and_errors(client, tmp_path):
    spec = {
        "name": "svc",
        "seed": 1,
        "generator": {"kind": "six-point"},
        "analyses": [{"kind": "or", "params": {"k": 2}}],
    }
    doc = client.post("/experiments/run",
                      json={"spec": spec, "out_dir": str(tmp_path)}).json()
    assert doc["files"]
    bad = dict(spec, analyses=[])
    assert client.post("/experiments/run",
                       json={"spec": bad, "out_dir": str(tmp_path)}).status_code == 422
