import json

import pytest

from core import ConfigError
from lab import CONFIGURATIONS_DIR, PROJECT_DIR
from lab.config_read import read_config_file, read_experiment_configs
from lab.defaults import WIENER_TIME_STEPS
from lab.experiment_config import P_VALUES, ExperimentConfig, parse_space


def experiment(**overrides):
    raw = {"name": "onedim", "kind": "wiener-onedim", "seed": 7}
    raw.update(overrides)
    return raw


def test_parse_space():
    assert parse_space("scalar").dim == 1
    space = parse_space("l1.5(3)")
    assert space.dim == 3
    with pytest.raises(ConfigError) as error:
        parse_space("l2", "params.space")
    assert error.value.field == "params.space"


def test_missing_params_take_defaults():
    config = ExperimentConfig.from_dict(experiment())
    assert config.params["steps"] == WIENER_TIME_STEPS
    assert config.params["factor"] == "sign-of-path"
    assert config.params["factor_arg"] is None
    assert "factor_arg" not in config.raw_params()


@pytest.mark.parametrize(
    "raw, field",
    [
        (experiment(seed=None), "seed"),
        (experiment(seed=True), "seed"),
        (experiment(seed=-1), "seed"),
        (experiment(kind="benchmark"), "kind"),
        (experiment(name=""), "name"),
        (experiment(extra=1), "extra"),
        (experiment(params={"bogus": 1}), "params.bogus"),
        (experiment(params={"p": [2, 1.0]}), "params.p[1]"),
        (experiment(params={"steps": 2.5}), "params.steps"),
        (experiment(params={"factor": "wild"}), "params.factor"),
        (experiment(params={"T": 0}), "params.T"),
    ],
)
def test_invalid_configs_name_the_field(raw, field):
    with pytest.raises(ConfigError) as error:
        ExperimentConfig.from_dict(raw)
    assert error.value.field == field


def test_exponent_range_is_open_at_one():
    assert P_VALUES.parse("params.p", 1.0001) == [1.0001]
    with pytest.raises(ConfigError):
        P_VALUES.parse("params.p", 1)


def test_overrides():
    config = ExperimentConfig.from_dict(experiment())
    overridden = config.with_overrides(seed=11, paths=500, output="out.json")
    assert (overridden.seed, overridden.params["paths"], overridden.output) == (11, 500, "out.json")
    assert config.seed == 7
    with pytest.raises(ConfigError) as error:
        config.with_overrides(paths=1)
    assert error.value.field == "params.paths"


def test_paths_override_needs_sampling_kind():
    config = ExperimentConfig.from_dict(
        {"name": "eval", "kind": "symbol-eval", "seed": 1, "params": {"symbol": {"type": "hilbert"}, "xi": [1]}}
    )
    with pytest.raises(ConfigError) as error:
        config.with_overrides(paths=100)
    assert error.value.field == "paths"


def test_with_param_revalidates():
    config = ExperimentConfig.from_dict({"name": "adv", "kind": "mart-adversarial", "seed": 1})
    assert config.with_param("depth", 5).params["depth"] == 5
    with pytest.raises(ConfigError):
        config.with_param("depth", 30)
    with pytest.raises(ConfigError):
        config.with_param("unknown", 1)


def test_read_config_file(tmp_path):
    single = tmp_path / "single.json"
    single.write_text(json.dumps(experiment()))
    assert read_config_file(single) == [experiment()]

    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(ConfigError):
        read_config_file(broken)
    with pytest.raises(ConfigError):
        read_config_file(tmp_path / "missing.json")


def test_read_experiment_configs(tmp_path):
    (tmp_path / "a.json").write_text(json.dumps([experiment(name="first"), experiment(name="second")]))
    (tmp_path / "b.json").write_text(json.dumps(experiment(name="third")))
    assert sorted(read_experiment_configs(tmp_path)) == ["first", "second", "third"]

    (tmp_path / "c.json").write_text(json.dumps({"kind": "wiener-onedim"}))
    with pytest.raises(ConfigError):
        read_experiment_configs(tmp_path)


def test_configurations_live_in_the_project_directory():
    assert (PROJECT_DIR / "lab" / "__init__.py").is_file()
    assert CONFIGURATIONS_DIR.is_dir()
    assert set(read_experiment_configs()) >= {"symbol-eval-riesz", "jump-parabolic-lattice"}
