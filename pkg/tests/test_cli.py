import json

from typer.testing import CliRunner

from birth_process_cli import cli_app
from config.run_config import RunConfig
from engine.event_log import EventLog
from utils.csv_tables import read_csv
from utils.errors import EXIT_USAGE

runner = CliRunner()


def test_simulate_is_reproducible(tmp_path):
    args = ["simulate", "--kernel", "trunc:k=2,r=1", "--t-end", "20", "--seed", "3"]
    first = runner.invoke(cli_app, args + ["--out", str(tmp_path / "a.jsonl")])
    second = runner.invoke(cli_app, args + ["--out", str(tmp_path / "b.jsonl")])
    assert first.exit_code == 0, first.output
    assert second.exit_code == 0, second.output
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()
    log = EventLog.read_jsonl(tmp_path / "a.jsonl")
    assert log.kernel == "trunc:k=2.0,r=1.0" and log.seed == 3


def test_simulate_from_config_file(tmp_path):
    config = RunConfig(kernel="free:r=1", dimension=2, t_end=2.0, seed=4).to_file(tmp_path / "run.json")
    result = runner.invoke(cli_app, ["simulate", "--config", str(config), "--out", str(tmp_path / "run.jsonl")])
    assert result.exit_code == 0, result.output
    assert EventLog.read_jsonl(tmp_path / "run.jsonl").dimension == 2


def test_invalid_arguments_exit_with_usage_code(tmp_path):
    result = runner.invoke(cli_app, ["simulate", "--t-end", "-1", "--out", str(tmp_path / "x.jsonl")])
    assert result.exit_code == EXIT_USAGE
    assert not (tmp_path / "x.jsonl").exists()
    result = runner.invoke(cli_app, ["simulate", "--kernel", "bogus:r=1", "--out", str(tmp_path / "x.jsonl")])
    assert result.exit_code == EXIT_USAGE


def test_verify_writes_report(tmp_path):
    report = tmp_path / "verify.json"
    result = runner.invoke(cli_app, ["verify", "--grid-size", "64", "--report", str(report)])
    assert result.exit_code == 0, result.output
    assert "PASS" in result.output
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["passed"] is True
    assert all(item["passed"] for item in payload["items"])


def test_unknown_figure(tmp_path):
    result = runner.invoke(cli_app, ["reproduce", "fig9", "--out", str(tmp_path)])
    assert result.exit_code == EXIT_USAGE


def _bundle_bytes(root):
    return {p.name: p.read_bytes() for p in sorted(root.iterdir())}


def test_reproduce_from_config_file(tmp_path):
    config = tmp_path / "fig2.json"
    config.write_text(json.dumps({"k_grid": [1.5, 3.0], "replicas": 2, "t_end": 60.0, "seed": 9}), encoding="utf-8")
    for name in ("a", "b"):
        result = runner.invoke(cli_app, ["reproduce", "fig2", "--config", str(config), "--out", str(tmp_path / name)])
        assert result.exit_code == 0, result.output
    bundle = tmp_path / "a" / "fig2"
    rows = read_csv(bundle / "speed_vs_k.csv")
    assert [float(r["k"]) for r in rows] == [1.5, 3.0]
    assert {int(r["replicas"]) for r in rows} == {2}
    readme = (bundle / "README.md").read_text(encoding="utf-8")
    assert '"seed": 9' in readme and '"replicas": 2' in readme
    assert _bundle_bytes(bundle) == _bundle_bytes(tmp_path / "b" / "fig2")


def test_reproduce_rejects_unknown_config_keys(tmp_path):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"k_grids": [1.5]}), encoding="utf-8")
    result = runner.invoke(cli_app, ["reproduce", "fig2", "--config", str(config), "--out", str(tmp_path)])
    assert result.exit_code == EXIT_USAGE
