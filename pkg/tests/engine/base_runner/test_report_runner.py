import json

import numpy as np
import pandas as pd
import pytest

from core import UsageError
from engine.base_runner import BaseRunner, ExperimentReport, dump_report, ordered_map, worker_count, write_table
from engine.base_runner.report import plain
from lab.experiment_config import ExperimentConfig


class EchoRunner(BaseRunner):
    def execute(self, report: ExperimentReport):
        report.check_at_most("half", 0.5, 1.0)
        report.observe("note", np.float64(0.25))
        report.add_row(step=1, value=np.array([1.0, 2.0]))


@pytest.fixture
def config(tmp_path):
    return ExperimentConfig.from_dict(
        {
            "name": "echo",
            "kind": "symbol-eval",
            "seed": 3,
            "params": {"symbol": {"type": "hilbert"}, "xi": [1.0]},
            "output": str(tmp_path / "echo.json"),
        }
    )


def make_report():
    return ExperimentReport(name="r", kind="symbol-eval", seed=1, params={"b": 1, "a": 2})


def test_verdict_follows_assertions():
    report = make_report()
    assert report.verdict == "pass"
    report.check_at_least("low", 1.0, 0.5)
    assert report.passed
    report.check_at_most("high", 3.0, 2.0, std_error=0.1)
    assert report.verdict == "fail"
    assert [a.name for a in report.failures()] == ["high"]


def test_plain_values():
    assert plain(np.int64(3)) == 3
    assert plain(np.array([[1.5]])) == [[1.5]]
    assert plain(1 + 2j) == [1.0, 2.0]
    assert plain(float("inf")) == "inf"
    assert plain({1: np.bool_(True)}) == {"1": True}


def test_dump_report_is_sorted_and_stable():
    report = make_report()
    report.check_at_most("x", 0.1, 1.0)
    report.observe("z", 1)
    text = dump_report(report)
    assert text == dump_report(report)
    assert text.endswith("\n")
    loaded = json.loads(text)
    assert list(loaded) == sorted(loaded)
    assert loaded["assertions"][0]["passed"] is True
    assert loaded["params"] == {"a": 2, "b": 1}


@pytest.mark.parametrize("table_format", ["csv", "jsonl"])
def test_write_table(tmp_path, table_format):
    rows = [{"p": 2.0, "ratio": 1.0, "xi": [1, 2]}, {"p": 3.0, "ratio": 1.5, "xi": [3, 4]}]
    path = write_table(rows, tmp_path / "table", table_format)
    assert path.suffix == f".{table_format}"
    if table_format == "csv":
        frame = pd.read_csv(path)
    else:
        frame = pd.read_json(path, lines=True)
    assert list(frame["ratio"]) == [1.0, 1.5]


def test_write_table_rejects_unknown_format(tmp_path):
    with pytest.raises(UsageError):
        write_table([{"a": 1}], tmp_path / "table", "xlsx")


def test_run_experiment_saves_report_and_table(config, tmp_path, capsys):
    report = EchoRunner(config).run_experiment(table_format="csv")
    assert report.passed
    saved = json.loads((tmp_path / "echo.json").read_text())
    assert saved["observations"] == {"note": 0.25}
    assert (tmp_path / "echo.csv").exists()
    assert "Results saved to:" in capsys.readouterr().out


def test_quiet_run_does_not_save(config, tmp_path, capsys):
    EchoRunner(config).run_experiment(save=False, verbose=False)
    assert not (tmp_path / "echo.json").exists()
    assert capsys.readouterr().out == ""


def test_runner_kind_must_match(config):
    class WrongKind(EchoRunner):
        KIND = "hilbert-ratio"

    with pytest.raises(UsageError):
        WrongKind(config)


def square(x):
    return x * x


def test_ordered_map_keeps_order():
    assert ordered_map(square, [3, 1, 2], processes=1) == [9, 1, 4]
    assert worker_count(1) == 1
    assert worker_count(None) >= 1
