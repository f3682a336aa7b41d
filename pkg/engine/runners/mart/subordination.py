import itertools
import logging

import numpy as np

from core.constants import beta_hilbert
from core.spaces import NormedSpace, is_hilbert
from engine.base_runner import BaseRunner, ExperimentReport
from lab.defaults import DRIFT_SE_BAND, SE_BAND
from lab.experiment_config import parse_space
from lab.seeding import derive_seed
from mart import (
    COEFFICIENT_RULES,
    ConstantFactor,
    FactorRule,
    PredictableSignFactor,
    RandomFactorRule,
    extract_factor,
    factor_process,
    gen_random_walk,
    martingale_drift,
    subordination_ratio,
    transform,
)
from mart.ensemble import FACTOR_TOLERANCE

logger = logging.getLogger(__name__)


class SubordinationRunner(BaseRunner):
    """Monte Carlo check of ``||g||_p <= (p* - 1) ||f||_p`` for ``dg = a df``, ``|a| <= 1``."""

    KIND = "mart-subordination"

    def configure(self):
        self.spaces = {text: parse_space(text, "params.spaces") for text in self.params["spaces"]}

    def factor_rule(self, name: str, scenario_seed: int) -> FactorRule:
        if name == "constant":
            return ConstantFactor(self.params["factor_constant"])
        if name == "predictable-sign":
            return PredictableSignFactor()
        return RandomFactorRule(derive_seed(scenario_seed, "factors"))

    def coefficient_rule(self, space: NormedSpace):
        direction = np.ones(space.dim) / np.sqrt(space.dim)
        return COEFFICIENT_RULES[self.params["coeff_rule"]](direction)

    def execute(self, report: ExperimentReport):
        depth, paths, noise = self.params["depth"], self.params["paths"], self.params["noise"]
        scenarios = itertools.product(self.params["p"], self.spaces.items(), self.params["factor_rules"])
        for p, (space_name, space), rule_name in scenarios:
            label = f"p={p:g} {space_name} {rule_name}"
            scenario_seed = derive_seed(self.seed, p, space_name, rule_name)
            f = gen_random_walk(
                space, depth, paths, self.coefficient_rule(space), scenario_seed, noise=noise
            )
            a = factor_process(f, self.factor_rule(rule_name, scenario_seed))
            g = transform(f, a)
            extracted = extract_factor(f, g)
            report.check_at_most(
                f"extracted factor {label}",
                np.max(np.abs(extracted.values)),
                1.0 + FACTOR_TOLERANCE,
            )

            ratio = subordination_ratio(f, g, depth, p)
            if is_hilbert(space):
                bound = beta_hilbert(p)
                report.check(
                    f"ratio {label}", ratio.ratio, ratio.upper_band(bound), ratio.within(bound), ratio.std_error
                )
                if p == 2.0:
                    report.check(
                        f"L2 orthogonality {label}",
                        ratio.ratio,
                        ratio.upper_band(1.0),
                        ratio.within(1.0),
                        ratio.std_error,
                    )
            else:
                # no sharp constant is known off Hilbert space
                report.observe(f"ratio {label}", ratio.ratio)

            for name, ensemble in (("f", f), ("g", g)):
                drift = martingale_drift(ensemble)
                report.check(f"drift of {name} {label}", drift.worst_z, DRIFT_SE_BAND, drift.within())

            report.add_row(
                p=p,
                space=space_name,
                factor_rule=rule_name,
                paths=paths,
                ratio=ratio.ratio,
                std_error=ratio.std_error,
                bound=beta_hilbert(p),
                band=ratio.upper_band(beta_hilbert(p), SE_BAND),
            )
            logger.info("%s: ratio %.6f +- %.2g", label, ratio.ratio, ratio.std_error)
