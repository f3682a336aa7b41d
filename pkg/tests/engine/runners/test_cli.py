import json

import pandas as pd
import pytest
from typer.testing import CliRunner

from run import app, parse_values

SYMBOL_EVAL = {
    "name": "riesz-at-diagonal",
    "kind": "symbol-eval",
    "seed": 1,
    "params": {"symbol": {"type": "riesz-alpha", "axis": 1, "alpha": 2}, "xi": [1, 1], "expected": [0.5]},
}


@pytest.fixture
def cli():
    return CliRunner()


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "symbols.json"
    path.write_text(json.dumps(SYMBOL_EVAL))
    return path


def test_run_prints_symbol_value(cli, config_file, tmp_path):
    out = tmp_path / "report.json"
    result = cli.invoke(app, ["run", str(config_file), "--out", str(out)])

    assert result.exit_code == 0, result.output
    assert "Running experiment: riesz-at-diagonal - symbol-eval" in result.output
    assert "m([1.0, 1.0]) = 0.5" in result.output
    report = json.loads(out.read_text())
    assert report["seed"] == 1
    assert report["assertions"][0]["passed"] is True


def test_run_is_reproducible(cli, config_file, tmp_path):
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    cli.invoke(app, ["run", str(config_file), "--out", str(first)])
    cli.invoke(app, ["run", str(config_file), "--out", str(second)])
    assert first.read_bytes() == second.read_bytes()


def test_failed_assertion_exits_with_one(cli, tmp_path):
    path = tmp_path / "wrong.json"
    path.write_text(json.dumps({**SYMBOL_EVAL, "params": {**SYMBOL_EVAL["params"], "expected": [0.3]}}))
    result = cli.invoke(app, ["run", str(path), "--out", str(tmp_path / "wrong-report.json")])

    assert result.exit_code == 1
    assert "FAILED riesz-at-diagonal" in result.output


def test_missing_seed_is_a_usage_error(cli, tmp_path):
    path = tmp_path / "unseeded.json"
    path.write_text(json.dumps({k: v for k, v in SYMBOL_EVAL.items() if k != "seed"}))
    result = cli.invoke(app, ["run", str(path)])

    assert result.exit_code == 2
    assert "seed" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["--name", "absent"],
        ["--format", "xlsx"],
        ["--paths", "100"],
    ],
)
def test_bad_options_are_usage_errors(cli, config_file, tmp_path, args):
    result = cli.invoke(app, ["run", str(config_file), "--out", str(tmp_path / "r.json"), *args])
    assert result.exit_code == 2


def test_run_writes_table(cli, config_file, tmp_path):
    out = tmp_path / "report.json"
    result = cli.invoke(app, ["run", str(config_file), "--out", str(out), "--format", "csv"])

    assert result.exit_code == 0, result.output
    table = pd.read_csv(tmp_path / "report.csv")
    assert list(table["re"]) == [0.5]


def test_several_entries_write_one_report_each(cli, tmp_path):
    path = tmp_path / "pair.json"
    entries = [SYMBOL_EVAL, {**SYMBOL_EVAL, "name": "second-eval"}]
    path.write_text(json.dumps(entries))
    result = cli.invoke(app, ["run", str(path), "--out", str(tmp_path / "reports")])

    assert result.exit_code == 0, result.output
    assert (tmp_path / "reports" / "riesz-at-diagonal.json").exists()
    assert (tmp_path / "reports" / "second-eval.json").exists()
    assert "Passed 2/2 experiments" in result.output


def test_sweep_writes_one_row_per_value(cli, config_file, tmp_path):
    out = tmp_path / "sweep"
    result = cli.invoke(
        app,
        ["sweep", str(config_file), "--param", "tolerance", "--values", "[0.1, 1e-12]", "--out", str(out)],
    )

    assert result.exit_code == 0, result.output
    table = pd.read_csv(tmp_path / "sweep.csv")
    assert list(table["tolerance"]) == [0.1, 1e-12]
    assert list(table["verdict"]) == ["pass", "pass"]
    assert len(set(table["seed"])) == 2


def test_sweep_rejects_unknown_parameter(cli, config_file, tmp_path):
    result = cli.invoke(
        app, ["sweep", str(config_file), "--param", "depth", "--values", "1,2", "--out", str(tmp_path / "s")]
    )
    assert result.exit_code == 2


def test_verify_all_without_matches(cli, tmp_path):
    result = cli.invoke(app, ["verify-all", "--experiments", "no-such-*", "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert "no experiment matches" in result.output


def test_parse_values():
    assert parse_values("[1.5, 2, 3]") == [1.5, 2, 3]
    assert parse_values("1.5, 2,scalar") == [1.5, 2, "scalar"]
    assert parse_values('"l2(4)"') == ["l2(4)"]


def test_verify_all_overrides_paths_of_sampling_experiments(cli, tmp_path):
    result = cli.invoke(
        app,
        [
            "verify-all",
            "--experiments", "wiener-onedim-sign",
            "--experiments", "symbol-eval-riesz",
            "--paths", "300",
            "--out", str(tmp_path),
        ],
    )

    assert result.exit_code in (0, 1), result.output
    report = json.loads((tmp_path / "wiener-onedim-sign.json").read_text())
    assert report["params"]["paths"] == 300
    assert (tmp_path / "symbol-eval-riesz.json").exists()


def test_degenerate_experiment_exits_with_a_diagnostic(cli, tmp_path):
    path = tmp_path / "vanishing.json"
    vanishing = {
        "name": "vanishing-integrand",
        "kind": "wiener-onedim",
        "seed": 1,
        "params": {
            "phi": {"breakpoints": [0, 1], "values": [0.0]},
            "p": [2],
            "paths": 100,
            "steps": 4,
            "n_scenarios": 0,
        },
    }
    path.write_text(json.dumps(vanishing))
    result = cli.invoke(app, ["run", str(path), "--out", str(tmp_path / "report.json")])

    assert result.exit_code == 2
    assert "Experiment could not be evaluated (DegenerateInputError)" in result.output
    assert "Traceback" not in result.output
