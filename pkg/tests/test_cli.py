import csv
import json
import subprocess
import sys

import pytest

from univalent.cli import CliConfig, ConfigError, dumps, main, parse_complex


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 0, err
    return json.loads(out)


def test_parse_complex():
    assert parse_complex("i") == 1j
    assert parse_complex("-i") == -1j
    assert parse_complex("0.6+0.8i") == 0.6 + 0.8j
    assert parse_complex("2") == 2
    with pytest.raises(ConfigError):
        parse_complex("1+")


def test_dumps_format():
    text = dumps({"b": 0.1, "a": [1 + 2j], "c": float("inf")})
    assert text.index('"b"') < text.index('"a"')  # insertion order kept
    assert "0.10000000000000001" in text
    assert json.loads(text)["a"] == [[1.0, 2.0]]


def test_config_validation():
    with pytest.raises(ConfigError):
        CliConfig(grid={"r_max": 1.0}).validate()
    with pytest.raises(ConfigError):
        CliConfig(solver_tol=0).validate()


def test_constants(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = run(["constants", "--out", str(out)], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert abs(doc["result"]["constants"]["r0"] - 0.329423) < 1e-5
    assert max(doc["result"]["deviation"].values()) <= 1e-5
    assert doc["config"]["output_path"] == str(out)
    assert len(doc["input_sha256"]) == 64
    loose = run_json(["constants", "--tol", "1e-6"], capsys)
    assert abs(loose["result"]["constants"]["r0"] - doc["result"]["constants"]["r0"]) < 1e-6
    assert loose["config"]["solver_tol"] == 1e-6


def test_global_flags_before_and_after(capsys):
    a = run_json(["--seed", "5", "constants"], capsys)
    b = run_json(["constants", "--seed", "5"], capsys)
    assert a["config"]["seed"] == b["config"]["seed"] == 5


def test_determinism(capsys):
    argv = ["norm", "--what", "T", "--function", "catalog:phi", "--grid", "100x180"]
    assert run(argv, capsys)[1] == run(argv, capsys)[1]


@pytest.mark.parametrize("argv, expected", [
    (["norm", "--what", "S", "--function", "catalog:koebe"], 6),
    (["norm", "--what", "T", "--function", "catalog:phi"], 2),
    (["norm", "--what", "S", "--function", "catalog:phi", "--transform", "I", "--alpha", "1"], 6),
])
def test_norm_examples(argv, expected, capsys):
    doc = run_json(argv, capsys)
    assert abs(doc["result"]["norm"]["value"] - expected) < 1e-3


def test_transform_example(capsys):
    doc = run_json(["transform", "--op", "J", "--alpha", "0.5", "--function", "catalog:koebe",
                    "--eval", "0.5", "--coeffs", "4"], capsys)
    val = complex(*doc["result"]["values"][0]["value"])
    series = run_json(["transform", "--op", "J", "--alpha", "0.5", "--function", "catalog:koebe",
                       "--eval", "0.5", "--representation", "series"], capsys)
    assert abs(val - complex(*series["result"]["values"][0]["value"])) < 1e-9
    # J_{1/2}[K](z) = -log(1-z)
    assert abs(val - 0.6931471805599453) < 1e-12
    assert [c[0] for c in doc["result"]["coeffs"]] == pytest.approx([0, 1, 0.5, 1 / 3, 0.25])


def test_criteria_example(capsys):
    doc = run_json(["criteria", "--function", "catalog:phi", "--alpha", "1", "--grid", "100x180"], capsys)
    v = {d["name"]: d["passed"] for d in doc["result"]["verdicts"]}
    assert v["noshiro_warschawski"] == "pass" and v["becker"] == "fail"


def test_extend_strict_example(tmp_path, capsys):
    out, summ = tmp_path / "g.csv", tmp_path / "g.json"
    code, _, err = run(["extend", "--function", "expr:z/(1-0.5*z)", "--lambda", "0", "--grid", "10x36",
                        "--out", str(out), "--summary", str(summ)], capsys)
    assert code == 0, err
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 360
    assert max(float(r["mu_abs"]) for r in rows if r["ok"] == "1") < 1
    doc = json.loads(summ.read_text())
    assert doc["result"]["failures"] == 0 and doc["result"]["max_mu"] < 1


def test_extend_extremal_reports_solver_failure(tmp_path, capsys):
    out, summ = tmp_path / "g.csv", tmp_path / "g.json"
    code, _, err = run(["extend", "--function", "catalog:spiral-koebe", "--lambda", "0.7853981633974483",
                        "--grid", "50x180", "--rout", "3", "--out", str(out), "--summary", str(summ)], capsys)
    assert code == 2 and "cells failed" in err
    assert out.exists() and json.loads(summ.read_text())["status"] == "solver_failure"


def test_subord(capsys):
    doc = run_json(["--seed", "3", "subord", "--random", "3", "--samples", "512",
                    "--function", "catalog:phi", "--divide-by-z"], capsys)
    assert [r["subordinate"] for r in doc["result"]["results"]] == [True] * 4


def test_exit_codes(capsys):
    assert run(["transform", "--op", "J", "--function", "catalog:koebe", "--eval", "1.5"], capsys)[0] == 3
    code, _, err = run(["norm", "--what", "T", "--function", "expr:1+0*z", "--grid", "10x10"], capsys)
    assert code == 3 and "singular" in err
    assert run(["norm", "--what", "T", "--function", "expr:z/(1-"], capsys)[0] == 4
    assert run(["norm", "--what", "T", "--function", "catalog:nope"], capsys)[0] == 4
    assert run(["--tol", "-1", "constants"], capsys)[0] == 4
    assert run(["bogus"], capsys)[0] == 4
    assert run(["subord"], capsys)[0] == 4


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"grid": {"n_radial": 50, "n_angular": 90}, "seed": 9}))
    doc = run_json(["--config", str(cfg), "norm", "--what", "T", "--function", "catalog:phi"], capsys)
    assert doc["config"]["grid"] == {"n_radial": 50, "n_angular": 90, "r_max": 0.9999}
    assert doc["config"]["seed"] == 9
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(["--config", str(cfg), "constants"], capsys)[0] == 4


def test_selftest_subset(capsys):
    code, out, _ = run(["selftest", "--only", "1,6,9"], capsys)
    assert code == 0
    assert out.count("[PASS]") == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "univalent", "constants"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "constants"
