"""Experiment configurations and their parameter ranges.

A configuration is a JSON object::

    {
        "name": "mart-subordination-scalar",
        "kind": "mart-subordination",
        "seed": 20240601,
        "params": {"p": [1.5, 2, 3], "paths": 100000},
        "output": "results/mart-subordination-scalar.json"
    }

``seed`` is mandatory. ``params`` may omit any parameter, which then takes
the default listed in ``PARAMETERS``; unknown parameters are rejected.
"""
import dataclasses
import math
import re
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from core.errors import ConfigError
from core.spaces import NormedSpace
from lab.defaults import (
    ADMISSIBILITY_SAMPLES,
    ADVERSARIAL_BUDGET,
    ADVERSARIAL_EXACT_PATH_CAP,
    DEFAULT_PATHS,
    GRID_HALF_PERIOD,
    OPNORM_ITERATIONS_PER_RESTART,
    OPNORM_RESTARTS,
    OPNORM_SLACK,
    TIME_DIVISIONS,
    WIENER_TIME_STEPS,
)

SEED_LIMIT = 2**64
MAX_PATHS = 10_000_000
SPACE_PATTERN = re.compile(r"^l(?P<q>[0-9]+(\.[0-9]+)?)\((?P<dim>[0-9]+)\)$")


def parse_space(text: str, field_name: str = "space") -> NormedSpace:
    """``"scalar"`` or ``"l<q>(<dim>)"``, e.g. ``"l2(4)"``."""
    if text == "scalar":
        return NormedSpace.scalar()
    match = SPACE_PATTERN.match(str(text))
    if match is None:
        raise ConfigError(field_name, f"expected 'scalar' or 'l<q>(<dim>)', got {text!r}")
    q, dim = float(match.group("q")), int(match.group("dim"))
    if q < 1 or dim < 1:
        raise ConfigError(field_name, f"need q >= 1 and dim >= 1, got {text!r}")
    return NormedSpace.lq(dim, q)


@dataclass(frozen=True)
class Param:
    default: Any
    type: str = "float"
    low: Optional[float] = None
    high: Optional[float] = None
    # p-like parameters exclude their lower end
    open_low: bool = False
    choices: Optional[Tuple[str, ...]] = None
    required: bool = False

    def _number(self, name: str, value):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(name, f"expected a number, got {value!r}")
        if self.type in ("int", "ints"):
            if value != int(value):
                raise ConfigError(name, f"expected an integer, got {value!r}")
            value = int(value)
        else:
            value = float(value)
            if not math.isfinite(value):
                raise ConfigError(name, f"must be finite, got {value!r}")
        if self.low is not None:
            if value < self.low or (self.open_low and value == self.low):
                side = ">" if self.open_low else ">="
                raise ConfigError(name, f"must be {side} {self.low:g}, got {value!r}")
        if self.high is not None and value > self.high:
            raise ConfigError(name, f"must be <= {self.high:g}, got {value!r}")
        return value

    def _string(self, name: str, value):
        if not isinstance(value, str):
            raise ConfigError(name, f"expected a string, got {value!r}")
        if self.choices is not None and value not in self.choices:
            raise ConfigError(name, f"must be one of {', '.join(self.choices)}; got {value!r}")
        return value

    def parse(self, name: str, value):
        if value is None:
            if self.required:
                raise ConfigError(name, "is required")
            return None
        if self.type in ("float", "int"):
            return self._number(name, value)
        if self.type == "str":
            return self._string(name, value)
        if self.type in ("floats", "ints", "strs"):
            values = value if isinstance(value, list) else [value]
            if not values:
                raise ConfigError(name, "needs at least one value")
            parse_one = self._string if self.type == "strs" else self._number
            return [parse_one(f"{name}[{i}]", v) for i, v in enumerate(values)]
        if self.type == "object":
            if not isinstance(value, dict):
                raise ConfigError(name, f"expected an object, got {value!r}")
            return value
        if self.type == "objects":
            if not isinstance(value, list) or not all(isinstance(v, dict) for v in value):
                raise ConfigError(name, "expected a list of objects")
            return value
        if self.type == "matrix":
            if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
                raise ConfigError(name, "expected a list of rows")
            return [[self._number(f"{name}[{i}]", v) for v in row] for i, row in enumerate(value)]
        if self.type == "list":
            if not isinstance(value, list):
                raise ConfigError(name, f"expected a list, got {value!r}")
            return value
        raise ConfigError(name, f"unknown parameter type {self.type}")


P_VALUES = Param([1.5, 2.0, 3.0], "floats", low=1.0, open_low=True)
MART_FACTOR_RULES = ("constant", "predictable-sign", "random")
WIENER_FACTOR_RULES = ("constant", "sign-of-path", "bounded")


def _paths(default: int) -> Param:
    return Param(default, "int", low=2, high=MAX_PATHS)


def _wiener(**extra) -> Dict[str, Param]:
    return {
        "p": P_VALUES,
        "paths": _paths(DEFAULT_PATHS),
        "steps": Param(WIENER_TIME_STEPS, "int", low=1, high=4096),
        "T": Param(1.0, low=0.0, open_low=True),
        "n_scenarios": Param(10, "int", low=0, high=1000),
        **extra,
    }


PARAMETERS: Dict[str, Dict[str, Param]] = {
    "burkholder-check": {
        "p": Param([1.5, 2.0, 3.0, 4.0], "floats", low=1.0, open_low=True),
        "dims": Param([1, 2, 4], "ints", low=1, high=64),
        "probes": Param(100_000, "int", low=1, high=MAX_PATHS),
        "deficit_probes": Param(10_000, "int", low=1, high=MAX_PATHS),
        "gradient_probes": Param(2_000, "int", low=1, high=MAX_PATHS),
        "sup_pairs": Param(200, "int", low=0, high=10_000),
        "sup_depth": Param(3, "int", low=0, high=6),
        "sup_branching": Param(2, "int", low=2, high=4),
    },
    "mart-subordination": {
        "p": P_VALUES,
        "spaces": Param(["scalar", "l2(4)"], "strs"),
        "factor_rules": Param(["predictable-sign", "random", "constant"], "strs", choices=MART_FACTOR_RULES),
        "factor_constant": Param(-0.5, low=-1.0, high=1.0),
        "coeff_rule": Param("history-product", "str", choices=("constant", "history-product")),
        "noise": Param("rademacher", "str", choices=("rademacher", "gaussian", "uniform")),
        "depth": Param(10, "int", low=1, high=24),
        "paths": _paths(DEFAULT_PATHS),
    },
    "mart-adversarial": {
        "p": Param(4.0, low=1.0, open_low=True),
        "space": Param("scalar", "str"),
        "depth": Param(12, "int", low=1, high=24),
        "budget": Param(ADVERSARIAL_BUDGET, "int", low=0, high=MAX_PATHS),
        "paths": _paths(ADVERSARIAL_EXACT_PATH_CAP),
    },
    "jump-parabolic": {
        "p": P_VALUES,
        "n": Param(64, "int", low=8, high=1024),
        "L": Param(math.pi, low=0.0, open_low=True),
        "offsets": Param([[1], [3]], "matrix"),
        "weights": Param([1.0, 0.5], "floats", low=0.0, open_low=True),
        "phi": Param([-1.0, 0.5], "floats", low=-1.0, high=1.0),
        "s": Param(-1.0),
        "u": Param(0.0),
        "x": Param([0.0], "floats"),
        "boundary": Param("cosine", "str", choices=("cosine", "random")),
        "frequency": Param(1, "int", low=1, high=512),
        "paths": _paths(20_000),
        "divisions": Param(TIME_DIVISIONS, "int", low=1, high=8192),
        "symbol_samples": Param(ADMISSIBILITY_SAMPLES, "int", low=1, high=MAX_PATHS),
        "symbol_cases": Param(10_000, "int", low=0, high=MAX_PATHS),
    },
    "symbol-eval": {
        "symbol": Param(None, "object", required=True),
        "xi": Param(None, "list", required=True),
        "expected": Param(None, "list"),
        "tolerance": Param(1e-12, low=0.0),
    },
    "opnorm-search": {
        "symbols": Param(None, "objects", required=True),
        "p": P_VALUES,
        "n": Param(None, "int", low=8, high=4096),
        "L": Param(GRID_HALF_PERIOD, low=0.0, open_low=True),
        "restarts": Param(OPNORM_RESTARTS, "int", low=0, high=1000),
        "iterations": Param(OPNORM_ITERATIONS_PER_RESTART, "int", low=1, high=100_000),
        "slack": Param(OPNORM_SLACK, low=0.0),
        "admissibility_samples": Param(ADMISSIBILITY_SAMPLES, "int", low=1, high=MAX_PATHS),
    },
    "hilbert-ratio": {
        "p": Param([1.5, 2.0, 3.0, 4.0], "floats", low=1.0, open_low=True),
        "n": Param(1024, "int", low=8, high=1 << 20),
        "L": Param(GRID_HALF_PERIOD, low=0.0, open_low=True),
        "gammas": Param([0.8, 0.9, 0.95], "floats", low=0.0, high=1.0, open_low=True),
        "wave": Param(3, "int", low=1, high=1 << 19),
        "restarts": Param(OPNORM_RESTARTS, "int", low=0, high=1000),
        "iterations": Param(OPNORM_ITERATIONS_PER_RESTART, "int", low=1, high=100_000),
    },
    "wiener-orthogonal": _wiener(
        f1=Param({"breakpoints": [0.0, 0.5, 1.0], "values": [1.0, 2.0]}, "object"),
        f2=Param({"breakpoints": [0.0, 0.25, 1.0], "values": [0.5, -1.0]}, "object"),
    ),
    "wiener-selfadjoint": _wiener(
        phi=Param({"breakpoints": [0.0, 0.5, 1.0], "values": [[[1.0, 0.0]], [[0.5, 1.0]]]}, "object"),
        A=Param([[1.0, 0.5], [0.5, -1.0]], "matrix"),
        antisymmetric=Param(None, "matrix"),
    ),
    "wiener-onedim": _wiener(
        phi=Param({"breakpoints": [0.0, 0.5, 1.0], "values": [1.0, -2.0]}, "object"),
        factor=Param("sign-of-path", "str", choices=WIENER_FACTOR_RULES),
        factor_arg=Param(None),
    ),
}

KINDS = tuple(PARAMETERS)
TOP_LEVEL_FIELDS = ("name", "kind", "seed", "params", "output", "description")


def parse_params(kind: str, raw: dict) -> Dict[str, Any]:
    schema = PARAMETERS[kind]
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"params.{unknown[0]}", f"unknown parameter for {kind}")
    return {
        name: param.parse(f"params.{name}", raw.get(name, param.default))
        for name, param in schema.items()
    }


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    kind: str
    seed: int
    params: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config", "an experiment must be a JSON object")
        unknown = sorted(set(raw) - set(TOP_LEVEL_FIELDS))
        if unknown:
            raise ConfigError(unknown[0], "unknown field")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise ConfigError("name", "must be a non-empty string")
        kind = raw.get("kind")
        if kind not in PARAMETERS:
            raise ConfigError("kind", f"must be one of {', '.join(KINDS)}; got {kind!r}")
        seed = raw.get("seed")
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ConfigError("seed", "is mandatory and must be an integer")
        if not 0 <= seed < SEED_LIMIT:
            raise ConfigError("seed", f"must lie in [0, 2^64), got {seed}")
        params = raw.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError("params", "must be an object")
        output = raw.get("output")
        if output is not None and not isinstance(output, str):
            raise ConfigError("output", "must be a path string")
        return cls(name, kind, seed, parse_params(kind, params), output)

    def raw_params(self) -> Dict[str, Any]:
        return {k: v for k, v in self.params.items() if v is not None}

    def with_param(self, name: str, value) -> "ExperimentConfig":
        if name not in PARAMETERS[self.kind]:
            raise ConfigError(f"params.{name}", f"unknown parameter for {self.kind}")
        params = {**self.raw_params(), name: value}
        return dataclasses.replace(self, params=parse_params(self.kind, params))

    def with_overrides(
        self,
        seed: Optional[int] = None,
        paths: Optional[int] = None,
        output: Optional[str] = None,
    ) -> "ExperimentConfig":
        config = self
        if seed is not None:
            if not 0 <= seed < SEED_LIMIT:
                raise ConfigError("seed", f"must lie in [0, 2^64), got {seed}")
            config = dataclasses.replace(config, seed=seed)
        if paths is not None:
            if "paths" not in PARAMETERS[self.kind]:
                raise ConfigError("paths", f"{self.kind} experiments do not sample paths")
            config = config.with_param("paths", paths)
        if output is not None:
            config = dataclasses.replace(config, output=output)
        return config
