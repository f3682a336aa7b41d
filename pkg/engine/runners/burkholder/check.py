import logging

import numpy as np

from burkholder import (
    BurkholderParams,
    check_gradient_bound,
    check_majorization,
    diagonal_value,
    gradient_bound_constant,
    orthogonal_deficit,
    sample_admissible_probes,
    sup_u_approx,
    trivial_value,
    wang_function,
    wang_u,
    zigzag_deficit,
)
from core.spaces import NormedSpace, norm
from engine.base_runner import BaseRunner, ExperimentReport
from lab.defaults import (
    DIAGONAL_TOLERANCE,
    FD_TOLERANCE,
    HOMOGENEITY_RTOL,
    MAJORIZATION_TOLERANCE,
)
from lab.seeding import derive_seed, rng_stream, stream_tag

logger = logging.getLogger(__name__)

_CHECK_TAG = stream_tag("burkholder", "check")
CLOSED_FORM_TOLERANCE = 1e-12
SUP_TOLERANCE = 1e-9


def unit_ball(rng: np.random.Generator, n: int, dim: int, radius: float = 1.0) -> np.ndarray:
    v = rng.standard_normal((n, dim))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * (radius * rng.random(n))[:, None]


class BurkholderCheckRunner(BaseRunner):
    KIND = "burkholder-check"

    def _rng(self, *labels) -> np.random.Generator:
        return rng_stream(derive_seed(self.seed, *labels), _CHECK_TAG)

    def execute(self, report: ExperimentReport):
        for p in self.params["p"]:
            for dim in self.params["dims"]:
                params = BurkholderParams.sharp(NormedSpace.lq(dim), p)
                self.check_closed_form(report, params)
                self.check_deficits(report, params)
                self.check_gradient(report, params)
            if self.params["sup_pairs"] > 0:
                self.check_sup_sandwich(report, BurkholderParams.sharp(NormedSpace.scalar(), p))

    def check_closed_form(self, report: ExperimentReport, params: BurkholderParams):
        p, dim = params.p.p, params.space.dim
        label = f"p={p:g} dim={dim}"
        n = self.params["probes"]
        rng = self._rng("closed-form", p, dim)
        x = unit_ball(rng, n, dim)
        y = unit_ball(rng, n, dim)

        slack = check_majorization(params, x, y)
        report.check_at_least(f"majorization {label}", np.min(slack), -MAJORIZATION_TOLERANCE)

        alpha = rng.uniform(-3.0, 3.0, size=n)
        scaled = wang_u(params, alpha[:, None] * x, alpha[:, None] * y)
        expected = np.abs(alpha) ** p * wang_u(params, x, y)
        scale = np.abs(alpha) ** p * (norm(params.space, x) + norm(params.space, y)) ** p
        error = np.abs(scaled - expected) / np.maximum(scale, np.finfo(float).tiny)
        report.check_at_most(f"homogeneity {label}", np.max(error), HOMOGENEITY_RTOL)

        eps = rng.uniform(-1.0, 1.0, size=n)
        eps[:2] = (-1.0, 1.0)
        report.check_at_most(
            f"diagonal {label}", np.max(diagonal_value(params, x, eps)), DIAGONAL_TOLERANCE
        )

        if p == 2.0:
            gap = np.abs(wang_u(params, x, y) - trivial_value(params, x, y))
            report.check_at_most(f"p=2 closed form dim={dim}", np.max(gap), CLOSED_FORM_TOLERANCE)

    def check_deficits(self, report: ExperimentReport, params: BurkholderParams):
        p, dim = params.p.p, params.space.dim
        label = f"p={p:g} dim={dim}"
        u = wang_function(params)
        x, y, z1, z2 = sample_admissible_probes(
            params.space, self.params["deficit_probes"], derive_seed(self.seed, "deficits", p, dim)
        )
        rng = self._rng("zigzag-eps", p, dim)
        eps = rng.uniform(-1.0, 1.0, size=x.shape[0])
        eps[::4] = 1.0
        eps[1::4] = -1.0
        zigzag = zigzag_deficit(u, x, y, z1, eps)
        orthogonal = orthogonal_deficit(u, x, y, z1, z2)
        report.check_at_most(f"zigzag deficit {label}", np.max(zigzag), FD_TOLERANCE)
        report.check_at_most(f"orthogonal deficit {label}", np.max(orthogonal), FD_TOLERANCE)
        report.add_row(
            check="deficits",
            p=p,
            dim=dim,
            zigzag_max=float(np.max(zigzag)),
            orthogonal_max=float(np.max(orthogonal)),
        )

    def check_gradient(self, report: ExperimentReport, params: BurkholderParams):
        p, dim = params.p.p, params.space.dim
        n = self.params["gradient_probes"]
        constant = gradient_bound_constant(params, n, derive_seed(self.seed, "gradient-fit", p, dim))
        result = check_gradient_bound(params, constant, n, derive_seed(self.seed, "gradient-check", p, dim))
        report.check(
            f"gradient growth p={p:g} dim={dim}",
            result.max_ratio,
            constant * result.margin,
            result.passed,
        )
        report.observe(f"gradient constant p={p:g} dim={dim}", constant)

    def check_sup_sandwich(self, report: ExperimentReport, params: BurkholderParams):
        p = params.p.p
        rng = self._rng("sup-pairs", p)
        pairs = rng.uniform(-1.0, 1.0, size=(self.params["sup_pairs"], 2))
        depth, branching = self.params["sup_depth"], self.params["sup_branching"]

        below, above, drop = np.inf, -np.inf, -np.inf
        exhausted = 0
        for i, (x, y) in enumerate(pairs):
            search_seed = derive_seed(self.seed, "sup-search", p, i)
            previous = None
            for d in range(depth + 1):
                approx = sup_u_approx(params, x, y, d, branching, seed=search_seed)
                exhausted += approx.exhausted
                below = min(below, approx.value - approx.trivial)
                above = max(above, approx.value - float(wang_u(params, [x], [y])))
                if previous is not None:
                    drop = max(drop, previous - approx.value)
                previous = approx.value

        label = f"p={p:g}"
        report.check_at_least(f"sup-U above trivial {label}", below, -CLOSED_FORM_TOLERANCE)
        report.check_at_most(f"sup-U below Wang {label}", above, SUP_TOLERANCE)
        report.check_at_most(f"sup-U monotone in depth {label}", drop, CLOSED_FORM_TOLERANCE)
        report.observe(f"sup-U budget exhaustions {label}", exhausted)
        logger.info("sup-U sandwich %s: gap to Wang %.3g", label, above)
