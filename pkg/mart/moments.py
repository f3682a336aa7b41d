import numpy as np

from core.errors import DegenerateInputError, UsageError
from core.spaces import norm
from lab.stats import (
    DriftReport,
    Estimate,
    RatioEstimate,
    drift_report,
    jackknife_ratio,
    mean_estimate,
)
from mart.ensemble import DiscretePathEnsemble


def _powers(ensemble: DiscretePathEnsemble, step: int, p: float) -> np.ndarray:
    return norm(ensemble.space, ensemble.step(step)) ** p


def lp_moment(ensemble: DiscretePathEnsemble, step: int, p: float) -> Estimate:
    """Empirical ``E |f_step|^p`` with its standard error (zero for exact ensembles)."""
    estimate = mean_estimate(_powers(ensemble, step, p))
    if ensemble.exact:
        return Estimate(estimate.value, 0.0)
    return estimate


def subordination_ratio(
    f: DiscretePathEnsemble, g: DiscretePathEnsemble, step: int, p: float
) -> RatioEstimate:
    """``(E|g_n|^p / E|f_n|^p)^(1/p)`` with a jackknife standard error."""
    if f.n_paths != g.n_paths:
        raise UsageError(f"Ensembles differ in path count: {f.n_paths} vs {g.n_paths}")
    denominator = _powers(f, step, p)
    if not np.sum(denominator) > 0:
        raise DegenerateInputError(f"E|f_{step}|^p is zero; the ratio is undefined")
    ratio = jackknife_ratio(_powers(g, step, p), denominator, power=p)
    if f.exact and g.exact:
        return RatioEstimate(ratio.ratio, 0.0)
    return ratio


def martingale_drift(ensemble: DiscretePathEnsemble) -> DriftReport:
    """Per-step, per-coordinate mean of ``df_n`` for ``n >= 1``, shape ``(depth, dim)``."""
    report = drift_report(ensemble.increments[:, 1:])
    if ensemble.exact:
        return DriftReport(report.mean, np.zeros_like(report.mean))
    return report
