import pytest

from core import ConfigError, UsageError
from engine.runners.runner_factory import RUNNERS, RunnerFactory, run_quietly
from lab.config_read import read_experiment_configs
from lab.experiment_config import KINDS, ExperimentConfig

SYMBOL_EVAL = {
    "name": "riesz-at-diagonal",
    "kind": "symbol-eval",
    "seed": 1,
    "params": {"symbol": {"type": "riesz-alpha"}, "xi": [1, 1], "expected": [0.5]},
}


def test_every_kind_has_a_runner():
    assert set(RUNNERS) == set(KINDS)
    for kind, runner_class in RUNNERS.items():
        assert runner_class.KIND == kind


@pytest.mark.parametrize("name, config", sorted(read_experiment_configs().items()))
def test_shipped_configurations_are_valid(name, config):
    runner = RunnerFactory().build_runner(config)
    runner.configure()
    assert runner.name == name


def test_factory_applies_overrides():
    runner = RunnerFactory(seed=9, output="elsewhere.json").build_runner(SYMBOL_EVAL)
    assert runner.seed == 9
    assert str(runner.report_path()) == "elsewhere.json"


def test_symbol_eval_checks_expected_values():
    report = run_quietly(ExperimentConfig.from_dict(SYMBOL_EVAL))
    assert report.passed
    assert report.rows[0]["re"] == pytest.approx(0.5)

    wrong = {**SYMBOL_EVAL, "params": {**SYMBOL_EVAL["params"], "expected": [0.25]}}
    assert not run_quietly(ExperimentConfig.from_dict(wrong)).passed


def test_symbol_eval_flat_xi_is_one_point_except_on_the_line():
    hilbert = {**SYMBOL_EVAL, "params": {"symbol": {"type": "hilbert"}, "xi": [-1, 0, 2]}}
    report = run_quietly(ExperimentConfig.from_dict(hilbert))
    assert [row["im"] for row in report.rows] == [1.0, 0.0, -1.0]

    mismatched = {**SYMBOL_EVAL, "params": {"symbol": {"type": "riesz-alpha"}, "xi": [1, 1, 1]}}
    with pytest.raises(ConfigError) as error:
        run_quietly(ExperimentConfig.from_dict(mismatched))
    assert error.value.field == "params.xi"


def test_adversarial_runner():
    config = {
        "name": "adversarial",
        "kind": "mart-adversarial",
        "seed": 2,
        "params": {"p": 4, "depth": 4, "budget": 50},
    }
    report = run_quietly(ExperimentConfig.from_dict(config))
    assert report.passed
    assert report.observations["exact enumeration"] is True
    assert report.observations["evaluations"] == 51


def test_adversarial_runner_rejects_banach_space():
    config = {
        "name": "adversarial",
        "kind": "mart-adversarial",
        "seed": 2,
        "params": {"space": "l1(2)", "depth": 2, "budget": 1},
    }
    with pytest.raises(UsageError):
        run_quietly(ExperimentConfig.from_dict(config))


def test_selfadjoint_runner_observes_antisymmetric_case():
    config = {
        "name": "reflection",
        "kind": "wiener-selfadjoint",
        "seed": 3,
        "params": {
            "p": [3],
            "paths": 500,
            "steps": 8,
            "phi": {"breakpoints": [0, 1], "values": [[[1, 0], [0, 1]]]},
            "A": [[1, 0], [0, -1]],
            "antisymmetric": [[0, 1], [-1, 0]],
        },
    }
    report = run_quietly(ExperimentConfig.from_dict(config))
    names = {a.name: a for a in report.assertions}
    assert names["selfadjoint-transform p=3"].passed
    assert report.observations["antisymmetric-transform p=3"] == pytest.approx(1.0)
    assert report.observations["spectral norm of A"] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "params, field",
    [
        ({"A": [[1, 2], [0, 1]]}, "params.A"),
        ({"A": [[1]]}, "params.A"),
        ({"antisymmetric": [[1, 0], [0, 1]]}, "params.antisymmetric"),
        ({"phi": {"breakpoints": [0, 2], "values": [[[1, 0]]]}}, "params.phi.breakpoints"),
        ({"phi": {"breakpoints": [0, 1], "values": [[[1, 0]]], "extra": 1}}, "params.phi.extra"),
    ],
)
def test_selfadjoint_runner_errors(params, field):
    config = {"name": "bad", "kind": "wiener-selfadjoint", "seed": 1, "params": params}
    runner = RunnerFactory().build_runner(config)
    with pytest.raises(ConfigError) as error:
        runner.configure()
    assert error.value.field == field


def test_onedim_constant_factor_needs_argument():
    config = {"name": "onedim", "kind": "wiener-onedim", "seed": 1, "params": {"factor": "constant"}}
    with pytest.raises(ConfigError) as error:
        RunnerFactory().build_runner(config).configure()
    assert error.value.field == "params.factor_arg"


def test_small_opnorm_search():
    config = {
        "name": "riesz-grid",
        "kind": "opnorm-search",
        "seed": 4,
        "params": {
            "symbols": [{"label": "riesz", "type": "riesz-alpha", "min_ratio": 1.0}],
            "p": [2],
            "n": 8,
            "restarts": 0,
            "iterations": 3,
            "admissibility_samples": 100,
        },
    }
    report = run_quietly(ExperimentConfig.from_dict(config))
    assert report.passed
    assert report.observations["best ratio riesz p=2"] == pytest.approx(1.0)


def test_duplicate_symbol_labels_are_rejected():
    config = {
        "name": "dupes",
        "kind": "opnorm-search",
        "seed": 4,
        "params": {"symbols": [{"label": "a", "type": "hilbert"}, {"label": "a", "type": "hilbert"}]},
    }
    with pytest.raises(ConfigError) as error:
        RunnerFactory().build_runner(config).configure()
    assert error.value.field == "params.symbols[1].label"


def test_small_hilbert_ratio():
    config = {
        "name": "hilbert-small",
        "kind": "hilbert-ratio",
        "seed": 5,
        "params": {"p": [2], "n": 64, "L": 3.141592653589793, "restarts": 0, "iterations": 3},
    }
    report = run_quietly(ExperimentConfig.from_dict(config))
    assert report.passed
    with pytest.raises(ConfigError):
        RunnerFactory().build_runner({**config, "params": {"n": 64, "wave": 40}}).configure()
