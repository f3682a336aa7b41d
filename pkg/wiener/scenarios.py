"""Seeded random scenarios for the Brownian transform checks.

Scenario ``i`` of an experiment reads its own stream, so adding scenarios
never changes the earlier ones. Breakpoints are drawn on the simulation time
grid.
"""
from typing import Tuple

import numpy as np

from lab.seeding import derive_seed, rng_stream, stream_tag
from wiener.integrand import BoundedFactorRule, ConstantFactorRule, SignOfPathRule, StepIntegrand

_SCENARIO_TAG = stream_tag("wiener", "scenario")

MAX_INTERVALS = 4
MAX_COORDINATES = 3


def scenario_stream(seed: int, kind: str, index: int) -> np.random.Generator:
    return rng_stream(derive_seed(seed, kind, index), _SCENARIO_TAG)


def random_breakpoints(rng: np.random.Generator, T: float, steps: int) -> np.ndarray:
    intervals = min(int(rng.integers(1, MAX_INTERVALS + 1)), steps)
    inner = np.sort(rng.choice(np.arange(1, steps), size=intervals - 1, replace=False))
    return np.concatenate([[0.0], inner * T / steps, [T]])


def random_step_integrand(rng: np.random.Generator, k: int, h: int, T: float, steps: int) -> StepIntegrand:
    breakpoints = random_breakpoints(rng, T, steps)
    return StepIntegrand(breakpoints, rng.normal(size=(breakpoints.shape[0] - 1, k, h)))


def random_factor_rule(rng: np.random.Generator):
    choice = int(rng.integers(3))
    if choice == 0:
        return ConstantFactorRule(float(rng.uniform(-1.0, 1.0)))
    if choice == 1:
        return SignOfPathRule()
    return BoundedFactorRule(float(rng.uniform(0.5, 4.0)))


def random_orthogonal_pair(seed: int, index: int, T: float, steps: int) -> Tuple[StepIntegrand, StepIntegrand]:
    """Two scalar integrands on shared breakpoints."""
    rng = scenario_stream(seed, "orthogonal", index)
    breakpoints = random_breakpoints(rng, T, steps)
    intervals = breakpoints.shape[0] - 1
    return (
        StepIntegrand(breakpoints, rng.normal(size=intervals)),
        StepIntegrand(breakpoints, rng.normal(size=intervals)),
    )


def random_selfadjoint(seed: int, index: int, T: float, steps: int) -> Tuple[StepIntegrand, np.ndarray]:
    """A k x h integrand and a symmetric h x h matrix."""
    rng = scenario_stream(seed, "selfadjoint", index)
    k = int(rng.integers(1, MAX_COORDINATES + 1))
    h = int(rng.integers(1, MAX_COORDINATES + 1))
    phi = random_step_integrand(rng, k, h, T, steps)
    B = rng.normal(size=(h, h))
    return phi, (B + B.T) / 2


def random_onedim(seed: int, index: int, T: float, steps: int):
    """A scalar integrand and an adapted factor rule with |a| <= 1."""
    rng = scenario_stream(seed, "onedim", index)
    phi = random_step_integrand(rng, 1, 1, T, steps)
    return phi, random_factor_rule(rng)
