import json

import pytest
from click.testing import CliRunner

from ordermetrics.cli import main

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


@pytest.fixture()
def six_file(tmp_path):
    p = tmp_path / "six.json"
    p.write_text(json.dumps(SIX))
    return str(p)


def run(*args):
    return CliRunner().invoke(main, args, catch_exceptions=False)


def test_space_valid(six_file):
    res = run("space", six_file)
    assert res.exit_code == 0
    assert '"labels"' in res.output


def test_space_invalid_exits_1(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"matrix": [[0, 1, 9], [1, 0, 1], [9, 1, 0]]}))
    res = run("space", str(p))
    assert res.exit_code == 1
    assert "triangle" in res.output


def test_space_unreadable_is_usage_error(tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json")
    assert run("space", str(p)).exit_code == 2


def test_or_csv_series(six_file, tmp_path):
    out = tmp_path / "series.csv"
    res = run("or", six_file, "-k", "3", "--profile", "--csv", str(out))
    assert res.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "k,value,witness"
    assert len(lines) == 4


def test_or_with_order_file(six_file, tmp_path):
    p = tmp_path / "t3.json"
    p.write_text(json.dumps(["3", "4", "5", "1", "2", "6"]))
    res = run("or", six_file, "-k", "3", "--order", str(p))
    assert res.exit_code == 0
    assert "1.1463414634146343" in res.output


def test_best_order(six_file):
    res = run("best-order", six_file, "-k", "2")
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert len(doc["orders"]) == 2


def test_br_and_snake(six_file):
    assert '"br": 2' in run("br", six_file).output
    doc = json.loads(run("snake", six_file, "-s", "3").output)
    assert len(doc["points"]) == 3


def test_gen_with_params():
    res = run("gen", "circle", "-p", "n=6")
    assert res.exit_code == 0
    assert len(json.loads(res.output)["labels"]) == 6


def test_gen_bad_param_format():
    assert run("gen", "circle", "-p", "n:6").exit_code == 2


def test_tiling_gen_and_dot(tmp_path):
    dot = tmp_path / "w.dot"
    res = run("tiling", "gen", "--levels", "3", "--span", "4",
              "--dot", str(dot))
    assert res.exit_code == 0
    assert dot.read_text().startswith("graph tiling")


def test_tiling_audit_csv(tmp_path):
    out = tmp_path / "audit.csv"
    res = run("tiling", "audit", "--levels", "4", "--span", "8",
              "--samples", "5", "--csv", str(out))
    assert res.exit_code == 0
    assert out.read_text().splitlines()[0].startswith("sample,")


def test_tiling_path_parse_error():
    assert run("tiling", "path", "nope", "0:1").exit_code == 2


def test_experiment_run(tmp_path, six_file):
    spec = {
        "name": "cli",
        "seed": 3,
        "generator": {"kind": "six-point"},
        "analyses": [{"kind": "or", "params": {"k": 2}}],
    }
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(spec))
    res = run("experiment", "run", str(p), "--out-dir", str(tmp_path / "out"))
    assert res.exit_code == 0
    assert (tmp_path / "out" / "cli_0_or.csv").exists()
