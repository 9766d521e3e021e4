import csv
import json

import pytest

from dynmatch.cli import main
from dynmatch.experiment import ConfigError, RunRecord, run_experiment

CONFIG = """
[run]
oracle = true

[streaming]
epsilon = 0.1
seeds = 3
verify = true
instances =
    erdos_renyi:n=60,p=0.1
    triangle_chain:t=10

[dynamic]
epsilon = 0.25
k = 2
seeds = 2
requery = 40
instances = update_mix:n=60,p=0.05,steps=200,delete_ratio=0.3
"""


@pytest.fixture
def config(tmp_path):
    path = tmp_path / "bench.ini"
    path.write_text(CONFIG)
    return path


def test_experiment_outputs(config, tmp_path):
    out = tmp_path / "res"
    records = run_experiment(config, out)
    assert {r.pipeline for r in records} == {"streaming", "dynamic"}
    with open(out / "streaming_summary.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert {"min_ratio", "mean_ratio"} <= set(rows[0])
    assert all(float(r["min_ratio"]) >= float(r["bound"]) for r in rows)
    with open(out / "dynamic.csv") as fh:
        drows = list(csv.DictReader(fh))
    assert drows and {"event_index", "mu_tilde", "mu_exact", "explored_edges"} <= set(drows[0])
    for name in ("streaming_ratios.png", "dynamic_trace.png", "records.json", "streaming.csv"):
        assert (out / name).stat().st_size > 0
    for rec in records:
        for cp in rec.checkpoints:
            if cp["mu_exact"]:
                key = "size" if rec.pipeline == "streaming" else "mu_tilde"
                assert cp["ratio"] == pytest.approx(cp[key] / cp["mu_exact"])
            if rec.pipeline == "streaming":
                assert cp["claims_ok"]


def test_replays_are_deterministic(config, tmp_path):
    a = run_experiment(config, tmp_path / "a", figures=False)
    b = run_experiment(config, tmp_path / "b", figures=False)
    assert [r.without_timing() for r in a] == [r.without_timing() for r in b]
    assert isinstance(a[0], RunRecord)


def test_empty_config_is_usage_error(tmp_path, capsys):
    empty = tmp_path / "empty.ini"
    empty.write_text("")
    with pytest.raises(ConfigError):
        run_experiment(empty, tmp_path / "o")
    with pytest.raises(SystemExit) as exc:
        main(["bench", str(empty)])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_gen_and_twopass(tmp_path):
    stream = tmp_path / "p.txt"
    assert main(["gen", "path:n=4", "--out", str(stream)]) == 0
    out = tmp_path / "p.json"
    assert main(["twopass", "--input", str(stream), "--epsilon", "0.1", "--oracle", "--out", str(out)]) == 0
    res = json.loads(out.read_text())
    assert res["size"] == 2 and res["mu_exact"] == 2 and res["ratio"] == 1.0
    assert sorted(map(tuple, res["matching_edges"])) == [(0, 1), (2, 3)]
    assert {"n", "mu_exact", "matching_edges", "size", "ratio"} <= set(res)


def test_twopass_rejects_deletions(tmp_path, capsys):
    stream = tmp_path / "d.txt"
    stream.write_text("n 3\n+ 0 1\n- 0 1\n")
    assert main(["twopass", "--input", str(stream), "--epsilon", "0.1"]) == 2
    assert "insert-only" in capsys.readouterr().err


def test_malformed_stream_reports_line(tmp_path, capsys):
    stream = tmp_path / "bad.txt"
    stream.write_text("n 3\n+ 0 1\n+ 0 9\n")
    assert main(["twopass", "--input", str(stream), "--epsilon", "0.1"]) == 2
    assert "3" in capsys.readouterr().err


@pytest.mark.parametrize("oracle", [False, True])
def test_dynamic_csv(tmp_path, oracle):
    out = tmp_path / "d.csv"
    args = ["dynamic", "--input", "gen:update_mix:n=30,p=0.1,steps=50,delete_ratio=0.3",
            "--epsilon", "0.25", "--k", "2", "--requery", "10", "--out", str(out)]
    assert main(args + (["--oracle"] if oracle else [])) == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    cols = ["event_index", "kind", "mu_tilde", "X", "r", "explored_edges"]
    assert list(rows[0]) == cols + (["mu_exact"] if oracle else [])
    if oracle:
        assert rows[0]["mu_exact"] != ""


def test_verify_report(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--input", "gen:erdos_renyi:n=40,p=0.15", "--epsilon", "0.1",
                 "--report", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["ok"] and all("slack" in c for c in rep["claims"])


def test_seed_from_environment(tmp_path, monkeypatch):
    a, b, c = (tmp_path / f"{x}.txt" for x in "abc")
    spec = "erdos_renyi:n=30,p=0.2"
    monkeypatch.setenv("DYNMATCH_SEED", "11")
    main(["gen", spec, "--out", str(a)])
    main(["gen", spec, "--seed", "11", "--out", str(b)])
    monkeypatch.setenv("DYNMATCH_SEED", "12")
    main(["gen", spec, "--out", str(c)])
    assert a.read_text() == b.read_text() != c.read_text()
