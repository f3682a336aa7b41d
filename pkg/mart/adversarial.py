"""Empirical lower bounds on the martingale transform constant.

The search tunes a Paley-Walsh martingale (coefficient per sign prefix) and a
+-1 predictable transform (sign per prefix) by coordinate ascent on
``(E|g_N|^p / E|f_N|^p)^(1/p)``. Small depths are evaluated over every sign
pattern, so the objective is an exact expectation; deeper searches use one
fixed sample of sign paths.
"""
import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from core.constants import Exponent
from core.errors import UsageError
from core.spaces import NormedSpace, is_hilbert, norm
from lab.defaults import ADVERSARIAL_BUDGET, ADVERSARIAL_EXACT_PATH_CAP
from lab.seeding import rng_stream, stream_tag
from lab.stats import RatioEstimate, jackknife_ratio
from mart.generators import sign_patterns
from mart.rules import MAX_TABLE_DEPTH, TableFactorRule, TableRule, prefix_code

logger = logging.getLogger(__name__)

COEFFICIENT_RANGE = (1e-3, 1e3)
RESCALINGS = (0.0, 0.5, 2.0)


@dataclass
class AdversarialResult:
    ratio: RatioEstimate
    coeff_rule: TableRule
    factor_rule: TableFactorRule
    evaluations: int
    accepted: int
    exact: bool


class _Objective:
    def __init__(self, space: NormedSpace, p: float, signs: np.ndarray):
        self.space = space
        self.p = p
        self.signs = signs
        depth = signs.shape[1]
        self.codes = [prefix_code(signs[:, : n - 1]) for n in range(1, depth + 1)]

    def terminal(self, coeffs: List[np.ndarray], factors: List[np.ndarray]):
        f = np.zeros((self.signs.shape[0], self.space.dim))
        g = np.zeros_like(f)
        for n, code in enumerate(self.codes, start=1):
            df = self.signs[:, n - 1 : n] * coeffs[n - 1][code]
            f += df
            g += factors[n][code][:, None] * df
        return norm(self.space, g) ** self.p, norm(self.space, f) ** self.p

    def __call__(self, coeffs, factors) -> float:
        num, den = self.terminal(coeffs, factors)
        total = np.sum(den)
        if total <= 0:
            return 0.0
        return float((np.sum(num) / total) ** (1.0 / self.p))


def adversarial_search(
    space: NormedSpace,
    p: float,
    depth: int,
    budget: int = ADVERSARIAL_BUDGET,
    seed: int = 0,
    n_paths: int = ADVERSARIAL_EXACT_PATH_CAP,
) -> AdversarialResult:
    """Coordinate ascent over prefix tables; only improvements are accepted.

    The proposal sequence depends on the seed alone, so the returned ratio
    is nondecreasing in ``budget``.
    """
    p = Exponent.of(p).p
    if not is_hilbert(space):
        raise UsageError(f"Adversarial search needs a scalar or Hilbert space, got {space.describe()}")
    if not 1 <= depth <= MAX_TABLE_DEPTH:
        raise UsageError(f"depth must lie in [1, {MAX_TABLE_DEPTH}], got {depth}")
    if budget < 0:
        raise UsageError(f"budget must be nonnegative, got {budget}")

    exact = 2**depth <= ADVERSARIAL_EXACT_PATH_CAP
    if exact:
        signs = sign_patterns(depth)
    else:
        rng = rng_stream(seed, stream_tag("mart", "adversarial", "paths"))
        signs = 2.0 * rng.integers(0, 2, size=(n_paths, depth)) - 1.0
    objective = _Objective(space, p, signs)

    rng = rng_stream(seed, stream_tag("mart", "adversarial", "proposals"))
    direction = np.zeros(space.dim)
    direction[0] = 1.0
    coeffs = [np.tile(direction, (2 ** (n - 1), 1)) for n in range(1, depth + 1)]
    # g = f to start, so the search never reports less than 1
    factors = [np.ones(2 ** max(n - 1, 0)) for n in range(depth + 1)]
    best = objective(coeffs, factors)
    accepted = 0

    for _ in range(budget):
        n = int(rng.integers(1, depth + 1))
        row = int(rng.integers(0, 2 ** (n - 1)))
        move = int(rng.integers(0, 3))
        if move == 0:
            old = factors[n][row]
            factors[n][row] = -old
        elif move == 1:
            old = coeffs[n - 1][row].copy()
            scale = RESCALINGS[int(rng.integers(0, len(RESCALINGS)))]
            coeffs[n - 1][row] = np.clip(old * scale, -COEFFICIENT_RANGE[1], COEFFICIENT_RANGE[1])
            if scale > 0 and np.max(np.abs(coeffs[n - 1][row])) < COEFFICIENT_RANGE[0]:
                coeffs[n - 1][row] = direction * COEFFICIENT_RANGE[0]
        else:
            old = coeffs[n - 1][row].copy()
            coeffs[n - 1][row] = rng.standard_normal(space.dim) * np.exp(rng.normal())
        candidate = objective(coeffs, factors)
        if candidate > best:
            best = candidate
            accepted += 1
            logger.debug("adversarial ratio improved to %.6f", best)
        elif move == 0:
            factors[n][row] = old
        else:
            coeffs[n - 1][row] = old

    num, den = objective.terminal(coeffs, factors)
    if exact:
        ratio = RatioEstimate(best, 0.0)
    else:
        ratio = jackknife_ratio(num, den, power=p)
    logger.info(
        "adversarial search p=%g depth=%d budget=%d: ratio %.6f (%d accepted)",
        p,
        depth,
        budget,
        ratio.ratio,
        accepted,
    )
    return AdversarialResult(
        ratio=ratio,
        coeff_rule=TableRule(coeffs),
        factor_rule=TableFactorRule(factors),
        evaluations=budget + 1,
        accepted=accepted,
        exact=exact,
    )
