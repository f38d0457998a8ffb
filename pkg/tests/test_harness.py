import json
import os
import subprocess
import sys

import pytest

from qwave import cli, harness, shor
from qwave.errors import ProbabilisticFailure
from qwave.harness import ExperimentConfig, read_output, run_experiment, summary_table


def _run(argv, capsys):
    status = cli.main(argv)
    out, err = capsys.readouterr()
    return status, out, err


def _failing_shor_seed():
    for seed in range(500):
        try:
            shor.shor_factor(21, seed, max_retries=1)
        except ProbabilisticFailure:
            return seed
    raise AssertionError("no failing seed found")


def test_grover_exact_case(capsys):
    status, out, _ = _run(["grover", "--n", "4", "--target", "0", "--queries", "auto", "--trials", "100",
                           "--seed", "1"], capsys)
    assert status == 0
    lines = out.splitlines()
    assert lines[0].startswith("# qwave schema=1 config=")
    assert lines[1] == "N,Q,predicted_success,empirical_success,oracle_calls"
    N, Q, pred, emp, calls = lines[2].split(",")
    assert (N, Q, float(pred), float(emp), calls) == ("4", "1", 1.0, 1.0, "100")


def test_qft_compare(capsys):
    status, out, _ = _run(["qft", "--compare", "--n", "8", "--seed", "1", "--format", "json"], capsys)
    assert status == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert len(doc["records"]) == 20
    assert doc["summary"]["max_deviation"] <= 1e-10


def test_qft_table_csv(capsys):
    status, out, _ = _run(["qft", "--table", "--n-max", "10"], capsys)
    assert status == 0
    body = [l for l in out.splitlines() if not l.startswith("#")]
    assert body[0] == "n,naive_ops,fft_ops,qft_gates"
    assert body[-1] == "10,1048576,5120,60"


def test_shor_json_record(capsys):
    status, out, _ = _run(["shor", "--modulus", "15", "--seed", "3", "--format", "json"], capsys)
    assert status == 0
    rec = json.loads(out)["records"][0]
    for key in ("M", "a_values_tried", "y_samples", "r", "factors", "oracle_calls"):
        assert key in rec
    assert sorted(rec["factors"]) == [3, 5]


def test_walk_search_summary(tmp_path, capsys):
    out = tmp_path / "search.csv"
    status, _, _ = _run(["walk", "--mode", "search", "--d", "2", "--side", "8", "--out", str(out)], capsys)
    assert status == 0
    doc = read_output(str(out))
    assert doc["records"][0].keys() == {"t", "p_marked"}
    assert set(doc["summary"]) == {"N", "T_peak", "p_peak", "T_eff"}
    assert json.loads((tmp_path / "search.csv.summary.json").read_text()) == doc["summary"]
    assert "timestamp" in json.loads((tmp_path / "search.csv.meta.json").read_text())


def test_walk_spread_columns(capsys):
    status, out, _ = _run(["walk", "--mode", "spread", "--d", "1", "--side", "64", "--steps", "10",
                           "--walker", "classical", "--trials", "200"], capsys)
    assert status == 0
    assert [l for l in out.splitlines() if not l.startswith("#")][0] == "t,sigma,wrapped"


@pytest.mark.parametrize("argv,code", [
    (["grover", "--n", "4", "--bogus"], 2),
    (["grover", "--n", "1"], 2),
    (["grover", "--n", "4", "--target", "4"], 2),
    (["shor", "--modulus", "13"], 2),
    (["shor", "--modulus", "65"], 3),
    (["walk", "--mode", "search", "--d", "2", "--side", "8", "--coin", "hadamard"], 2),
    (["walk", "--mode", "scaling", "--d", "3", "--sides", "4,6,8", "--coin", "grover"], 2),
    (["walk", "--mode", "search", "--d", "2", "--side", "4096"], 3),
    (["qft", "--n", "3"], 2),
    ([], 2),
])
def test_error_exit_codes_and_no_partial_output(argv, code, tmp_path, capsys):
    out = tmp_path / "result.csv"
    status, stdout, err = _run(argv + ["--out", str(out)] if argv else argv, capsys)
    assert status == code
    obj = json.loads(err.strip().splitlines()[-1])
    assert obj["exit_status"] == code and obj["message"]
    assert stdout == ""
    assert os.listdir(tmp_path) == []


def test_shor_retry_exhaustion(tmp_path, capsys):
    seed = _failing_shor_seed()
    out = tmp_path / "f.json"
    status, _, err = _run(["shor", "--modulus", "21", "--retries", "1", "--seed", str(seed), "--out", str(out)], capsys)
    assert status == 4
    obj = json.loads(err)
    assert obj["error"] == "probabilistic-failure"
    assert obj["log"]["attempts"] == 1
    assert not out.exists()


@pytest.mark.parametrize("argv", [
    ["grover", "--n", "37", "--target", "5", "--trials", "50"],
    ["qft", "--compare", "--n", "5", "--states", "3"],
    ["shor", "--modulus", "35"],
    ["walk", "--mode", "spread", "--d", "1", "--side", "64", "--steps", "20", "--walker", "classical"],
    ["walk", "--mode", "search", "--d", "3", "--side", "4"],
    ["baseline", "--n", "64", "--trials", "300"],
])
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_reproducible_payload_and_full_echo(argv, fmt, tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    for path in (a, b):
        assert _run(argv + ["--seed", "11", "--format", fmt, "--out", str(path)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    ns = cli.build_parser().parse_args(argv + ["--seed", "11", "--format", fmt])
    cfg = cli.config_from_args(ns)
    text = a.read_text()
    echo = json.loads(text)["config"] if fmt == "json" else json.loads(text.splitlines()[0].split("config=", 1)[1])
    for key, value in cfg.params.items():
        assert key in echo and echo[key] == value
    assert echo["seed"] == 11 and echo["format"] == fmt and echo["rng"].startswith("philox")


def test_seed_changes_sampled_output(capsys):
    outs = set()
    for seed in (1, 2, 3):
        outs.add(_run(["baseline", "--n", "64", "--trials", "50", "--seed", str(seed)], capsys)[1])
    assert len(outs) == 3


def test_summary_missing_inputs(tmp_path, capsys):
    status, _, err = _run(["summary", "--in", str(tmp_path)], capsys)
    assert status == 2
    obj = json.loads(err)
    assert len(obj["missing"]) == 3
    rep = summary_table(str(tmp_path))
    assert not rep.complete and len(rep.missing) == 3


def test_summary_joins_tables(tmp_path, capsys):
    for name, argv in (("fourier.csv", ["qft", "--table", "--n-max", "10"]),
                       ("search.json", ["baseline", "--n", "256", "--trials", "2000", "--format", "json"]),
                       ("walk3.csv", ["walk", "--mode", "scaling", "--d", "3", "--sides", "4,6,8,10"])):
        assert _run(argv + ["--out", str(tmp_path / name)], capsys)[0] == 0
    status, out, _ = _run(["summary", "--in", str(tmp_path)], capsys)
    assert status == 0
    assert "| 10 | 1024 | 1048576 | 5120 | 60 | fourier.csv |" in out
    rep = summary_table(str(tmp_path))
    row = rep.tables["search"][0]
    assert (row["N"], row["sorted"], row["grover"], row["hybrid"]) == (256, 8, 12, 4)
    assert abs(row["random_mean"] - 256) <= 25.6
    assert abs(rep.tables["walk"][0]["exponent"] - 0.5) <= 0.1
    assert rep.tables["walk"][0]["source"] == "walk3.csv"


def test_atomic_write_replaces_whole_file(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("old contents that are longer")
    harness.atomic_write(str(p), "new")
    assert p.read_text() == "new"
    assert os.listdir(tmp_path) == ["x.txt"]


def test_run_experiment_api_validates_before_running():
    res = run_experiment(ExperimentConfig("grover", {"n": 4, "target": 0, "queries": -1, "trials": 5}))
    assert res.status == 2 and res.payload == "" and res.error["error"] == "validation"
    res = run_experiment(ExperimentConfig("grover", {"n": 4, "target": 0, "queries": 1, "trials": 5}, seed=-3))
    assert res.status == 2


def test_console_script_entry_point(tmp_path):
    out = tmp_path / "g.csv"
    proc = subprocess.run([sys.executable, "-m", "qwave.cli", "grover", "--n", "16", "--trials", "10",
                           "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == ""
    assert read_output(str(out))["records"][0]["Q"] == "3"
