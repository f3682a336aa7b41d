import logging

import numpy as np

from core.errors import ConfigError, UsageError
from engine.base_runner import BaseRunner, ExperimentReport
from lab.defaults import SE_BAND
from lab.seeding import derive_seed
from wiener import (
    FACTOR_RULES,
    StepIntegrand,
    WienerCheckReport,
    WienerEnsemble,
    antisymmetric_transform_experiment,
    ito_isometry_check,
    onedim_transform_check,
    orthogonal_pair_check,
    random_onedim,
    random_orthogonal_pair,
    random_selfadjoint,
    selfadjoint_transform_check,
    spectral_norm,
)

logger = logging.getLogger(__name__)


def parse_integrand(description: dict, field: str) -> StepIntegrand:
    """``{"breakpoints": [...], "values": [...]}``; scalar values mean k = h = 1."""
    unknown = sorted(set(description) - {"breakpoints", "values"})
    if unknown:
        raise ConfigError(f"{field}.{unknown[0]}", "unknown integrand field")
    for key in ("breakpoints", "values"):
        if key not in description:
            raise ConfigError(f"{field}.{key}", "is required")
    try:
        return StepIntegrand(description["breakpoints"], np.asarray(description["values"], dtype=float))
    except (UsageError, TypeError, ValueError) as e:
        raise ConfigError(field, str(e))


def refine(phi: StepIntegrand, breakpoints: np.ndarray) -> StepIntegrand:
    """The same deterministic integrand on a finer partition."""
    interval = np.searchsorted(phi.breakpoints, breakpoints[:-1], side="right") - 1
    return StepIntegrand(breakpoints, phi.values[interval])


class WienerRunner(BaseRunner):
    def ensemble_args(self) -> dict:
        return dict(n_paths=self.params["paths"], T=self.params["T"], steps=self.params["steps"])

    def check_fits_horizon(self, phi: StepIntegrand, field: str):
        if phi.breakpoints[-1] > self.params["T"]:
            raise ConfigError(f"{field}.breakpoints", f"run past T = {self.params['T']}")

    def check_isometry(self, report: ExperimentReport, phi: StepIntegrand):
        args = self.ensemble_args()
        W = WienerEnsemble.generate(
            args["n_paths"], T=args["T"], steps=args["steps"], h=phi.h, seed=derive_seed(self.seed, "isometry")
        )
        estimate, expected = ito_isometry_check(phi, W)
        report.check(
            "Ito isometry",
            estimate.value,
            expected,
            abs(estimate.value - expected) <= SE_BAND * estimate.std_error + 1e-12,
            estimate.std_error,
        )

    def scenario_seed(self, index: int, p: float) -> int:
        # scenario 0 is the configured one
        if index == 0:
            return derive_seed(self.seed, p)
        return derive_seed(self.seed, "scenario", index, p)

    @staticmethod
    def record(report: ExperimentReport, result: WienerCheckReport, scenario: int = 0, **row):
        ratio = result.ratio
        label = f"{result.name} p={result.p:g}"
        if scenario:
            label = f"{label} scenario {scenario}"
        logger.info("%s: ratio %.4f, bound %s", label, ratio.ratio, result.bound)
        if result.bound is None:
            report.observe(label, ratio.ratio)
        else:
            report.check(label, ratio.ratio, ratio.upper_band(result.bound), result.passed, ratio.std_error)
        report.add_row(
            check=result.name,
            scenario=scenario,
            p=result.p,
            ratio=ratio.ratio,
            std_error=ratio.std_error,
            bound=result.bound,
            **row,
        )


class OrthogonalPairRunner(WienerRunner):
    """``f2.B1 - f1.B2`` against ``f1.B1 + f2.B2``; bound ``(p* - 1)^2``."""

    KIND = "wiener-orthogonal"

    def configure(self):
        f1 = parse_integrand(self.params["f1"], "params.f1")
        f2 = parse_integrand(self.params["f2"], "params.f2")
        for name, phi in (("f1", f1), ("f2", f2)):
            if phi.k != 1 or phi.h != 1:
                raise ConfigError(f"params.{name}.values", "orthogonal pairs take scalar integrands")
            self.check_fits_horizon(phi, f"params.{name}")
        breakpoints = np.union1d(f1.breakpoints, f2.breakpoints)
        self.f1, self.f2 = refine(f1, breakpoints), refine(f2, breakpoints)

    def execute(self, report: ExperimentReport):
        self.check_isometry(report, StepIntegrand.side_by_side(self.f1, self.f2))
        args = self.ensemble_args()
        scenarios = [(self.f1, self.f2)] + [
            random_orthogonal_pair(self.seed, index, args["T"], args["steps"])
            for index in range(1, self.params["n_scenarios"] + 1)
        ]
        for index, (f1, f2) in enumerate(scenarios):
            for p in self.params["p"]:
                result = orthogonal_pair_check(
                    f1, f2, p, args["n_paths"], self.scenario_seed(index, p), args["T"], args["steps"]
                )
                self.record(report, result, scenario=index)


class SelfAdjointRunner(WienerRunner):
    KIND = "wiener-selfadjoint"

    def configure(self):
        self.phi = parse_integrand(self.params["phi"], "params.phi")
        self.check_fits_horizon(self.phi, "params.phi")
        self.A = self.matrix("A", lambda A: np.allclose(A, A.T, rtol=0, atol=1e-12), "symmetric")
        self.antisymmetric = None
        if self.params["antisymmetric"] is not None:
            self.antisymmetric = self.matrix(
                "antisymmetric", lambda A: np.allclose(A, -A.T, rtol=0, atol=1e-12), "antisymmetric"
            )

    def matrix(self, name: str, predicate, description: str) -> np.ndarray:
        rows = self.params[name]
        h = self.phi.h
        if len(rows) != h or any(len(row) != h for row in rows):
            raise ConfigError(f"params.{name}", f"must be {h} x {h} to act on the driving coordinates")
        A = np.asarray(rows, dtype=float)
        if not predicate(A):
            raise ConfigError(f"params.{name}", f"must be {description}")
        return A

    def execute(self, report: ExperimentReport):
        self.check_isometry(report, self.phi)
        args = self.ensemble_args()
        report.observe("spectral norm of A", spectral_norm(self.A))
        scenarios = [(self.phi, self.A)] + [
            random_selfadjoint(self.seed, index, args["T"], args["steps"])
            for index in range(1, self.params["n_scenarios"] + 1)
        ]
        for index, (phi, A) in enumerate(scenarios):
            for p in self.params["p"]:
                seed = self.scenario_seed(index, p)
                result = selfadjoint_transform_check(phi, A, p, args["n_paths"], seed, args["T"], args["steps"])
                self.record(report, result, scenario=index, h=phi.h, norm_A=spectral_norm(A))
        if self.antisymmetric is None:
            return
        for p in self.params["p"]:
            experiment = antisymmetric_transform_experiment(
                self.phi, self.antisymmetric, p, args["n_paths"], self.scenario_seed(0, p), args["T"], args["steps"]
            )
            self.record(report, experiment)


def factor_name(rule) -> str:
    return next(name for name, rule_class in FACTOR_RULES.items() if isinstance(rule, rule_class))


class OneDimRunner(WienerRunner):
    KIND = "wiener-onedim"

    def configure(self):
        self.phi = parse_integrand(self.params["phi"], "params.phi")
        if self.phi.h != 1:
            raise ConfigError("params.phi.values", "one-dimensional transforms need h = 1")
        self.check_fits_horizon(self.phi, "params.phi")
        rule_class = FACTOR_RULES[self.params["factor"]]
        argument = self.params["factor_arg"]
        if self.params["factor"] == "constant":
            if argument is None or abs(argument) > 1:
                raise ConfigError("params.factor_arg", "a constant factor needs |a| <= 1")
            self.factor = rule_class(argument)
        elif self.params["factor"] == "bounded":
            self.factor = rule_class(1.0 if argument is None else argument)
        else:
            self.factor = rule_class()

    def execute(self, report: ExperimentReport):
        self.check_isometry(report, self.phi)
        args = self.ensemble_args()
        scenarios = [(self.phi, self.factor)] + [
            random_onedim(self.seed, index, args["T"], args["steps"])
            for index in range(1, self.params["n_scenarios"] + 1)
        ]
        for index, (phi, factor) in enumerate(scenarios):
            for p in self.params["p"]:
                result = onedim_transform_check(
                    phi, factor, p, args["n_paths"], self.scenario_seed(index, p), args["T"], args["steps"]
                )
                self.record(report, result, scenario=index, factor=factor_name(factor))
