import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from core.constants import Exponent, beta_hilbert
from core.errors import DegenerateInputError, UsageError
from lab.defaults import SE_BAND, WIENER_TIME_STEPS
from lab.stats import Estimate, RatioEstimate, jackknife_ratio, mean_estimate
from wiener.ensemble import WienerEnsemble
from wiener.integrand import ScalarRule, StepIntegrand

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12


def stochastic_integral(phi: StepIntegrand, W: WienerEnsemble) -> np.ndarray:
    """Left-point sums ``sum_j Phi_j (W(t_j) - W(t_{j-1}))`` with breakpoints snapped to the grid.

    Returns samples of ``(Phi . W)_T``, shape ``(n_paths, k)``.
    """
    if phi.h != W.h:
        raise UsageError(f"Integrand needs {phi.h} driving coordinates, ensemble has {W.h}")
    if phi.breakpoints[-1] > W.T * (1 + 1e-12):
        raise UsageError(f"Breakpoints run past T = {W.T}")
    nodes = W.grid_index(phi.breakpoints)
    total = np.zeros((W.n_paths, phi.k))
    for j in range(phi.intervals):
        start, stop = nodes[j], nodes[j + 1]
        if stop <= start:
            continue
        value = phi.value(j, W.path[:, : start + 1])
        increment = W.path[:, stop] - W.path[:, start]
        total += np.einsum("nkh,nh->nk", value, increment)
    return total


def ito_isometry_check(phi: StepIntegrand, W: WienerEnsemble):
    """Empirical ``E|(Phi . W)_T|^2`` against ``sum_j (t_j - t_{j-1}) |Phi_j|_F^2``."""
    if not phi.deterministic:
        raise UsageError("The isometry oracle needs a deterministic integrand")
    snapped = W.grid_index(phi.breakpoints) * W.dt
    expected = float(np.sum(np.diff(snapped) * np.sum(phi.values**2, axis=(1, 2))))
    samples = np.sum(stochastic_integral(phi, W) ** 2, axis=1)
    estimate: Estimate = mean_estimate(samples)
    return estimate, expected


@dataclass
class WienerCheckReport:
    name: str
    p: float
    ratio: RatioEstimate
    bound: Optional[float]

    @property
    def passed(self) -> Optional[bool]:
        if self.bound is None:
            return None
        return self.ratio.within(self.bound, SE_BAND)


def _lp_ratio(numerator_samples, denominator_samples, p: float) -> RatioEstimate:
    top = np.linalg.norm(numerator_samples, axis=1) ** p
    bottom = np.linalg.norm(denominator_samples, axis=1) ** p
    if not np.sum(bottom) > 0:
        raise DegenerateInputError("The reference integral vanishes on every path")
    return jackknife_ratio(top, bottom, power=p)


def _ensemble(h: int, n_paths: int, seed: int, T: float, steps: int) -> WienerEnsemble:
    return WienerEnsemble.generate(n_paths, T=T, steps=steps, h=h, seed=seed)


def orthogonal_pair_check(
    f1: StepIntegrand,
    f2: StepIntegrand,
    p: float,
    n_paths: int,
    seed: int,
    T: float = 1.0,
    steps: int = WIENER_TIME_STEPS,
) -> WienerCheckReport:
    """``M = f1.B1 + f2.B2`` against ``N = f2.B1 - f1.B2``; bound ``(p* - 1)^2``."""
    p = Exponent.of(p).p
    if f1.h != 1 or f2.h != 1:
        raise UsageError("Orthogonal pairs take integrands driven by one coordinate each")
    negated_f1 = f1.times_matrix([[-1.0]])
    M = StepIntegrand.side_by_side(f1, f2)
    N = StepIntegrand.side_by_side(f2, negated_f1)
    W = _ensemble(2, n_paths, seed, T, steps)
    ratio = _lp_ratio(stochastic_integral(N, W), stochastic_integral(M, W), p)
    report = WienerCheckReport("orthogonal-pair", p, ratio, beta_hilbert(p) ** 2)
    logger.info("orthogonal pair p=%g: ratio %.6f", p, ratio.ratio)
    return report


def spectral_norm(A) -> float:
    return float(np.max(np.abs(scipy.linalg.eigvalsh(A))))


def selfadjoint_transform_check(
    phi: StepIntegrand,
    A,
    p: float,
    n_paths: int,
    seed: int,
    T: float = 1.0,
    steps: int = WIENER_TIME_STEPS,
) -> WienerCheckReport:
    """``(Phi A) . W`` against ``Phi . W`` for symmetric A; bound ``(p* - 1) ||A||_2``."""
    p = Exponent.of(p).p
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape != (phi.h, phi.h):
        raise UsageError(f"A must be {phi.h} x {phi.h}, got {A.shape}")
    if np.max(np.abs(A - A.T), initial=0.0) > SYMMETRY_TOLERANCE:
        raise UsageError("A must be symmetric")
    W = _ensemble(phi.h, n_paths, seed, T, steps)
    ratio = _lp_ratio(stochastic_integral(phi.times_matrix(A), W), stochastic_integral(phi, W), p)
    bound = beta_hilbert(p) * spectral_norm(A)
    return WienerCheckReport("selfadjoint-transform", p, ratio, bound)


def onedim_transform_check(
    phi: StepIntegrand,
    a: ScalarRule,
    p: float,
    n_paths: int,
    seed: int,
    T: float = 1.0,
    steps: int = WIENER_TIME_STEPS,
) -> WienerCheckReport:
    """``(a Phi) . W`` against ``Phi . W`` for one driving coordinate; bound ``p* - 1``."""
    p = Exponent.of(p).p
    if phi.h != 1:
        raise UsageError(f"One-dimensional transforms need h = 1, got h = {phi.h}")
    W = _ensemble(1, n_paths, seed, T, steps)
    ratio = _lp_ratio(stochastic_integral(phi.scaled_by(a), W), stochastic_integral(phi, W), p)
    return WienerCheckReport("onedim-transform", p, ratio, beta_hilbert(p))


def antisymmetric_transform_experiment(
    phi: StepIntegrand,
    A,
    p: float,
    n_paths: int,
    seed: int,
    T: float = 1.0,
    steps: int = WIENER_TIME_STEPS,
) -> WienerCheckReport:
    """Same ratio as the self-adjoint check for antisymmetric A; reported, never asserted."""
    p = Exponent.of(p).p
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape != (phi.h, phi.h):
        raise UsageError(f"A must be {phi.h} x {phi.h}, got {A.shape}")
    if np.max(np.abs(A + A.T), initial=0.0) > SYMMETRY_TOLERANCE:
        raise UsageError("A must be antisymmetric")
    W = _ensemble(phi.h, n_paths, seed, T, steps)
    ratio = _lp_ratio(stochastic_integral(phi.times_matrix(A), W), stochastic_integral(phi, W), p)
    logger.info(
        "antisymmetric transform p=%g: ratio %.6f, ||A||_2 = %.6f",
        p,
        ratio.ratio,
        float(scipy.linalg.norm(A, 2)),
    )
    return WienerCheckReport("antisymmetric-transform", p, ratio, None)
