from dataclasses import dataclass

import numpy as np

from lab.defaults import DRIFT_SE_BAND, SE_BAND


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class RatioEstimate:
    ratio: float
    std_error: float

    def __float__(self):
        return float(self.ratio)

    @property
    def relative_error(self) -> float:
        if self.ratio == 0:
            return 0.0
        return self.std_error / abs(self.ratio)

    def upper_band(self, bound: float, band: float = SE_BAND) -> float:
        return bound * (1.0 + band * self.relative_error)

    def within(self, bound: float, band: float = SE_BAND) -> bool:
        return self.ratio <= self.upper_band(bound, band)


def mean_estimate(samples) -> Estimate:
    """Sample mean with its jackknife standard error.

    For the mean the jackknife reduces to ``std(ddof=1) / sqrt(n)``.
    """
    samples = np.asarray(samples, dtype=float)
    n = samples.shape[0]
    mean = float(np.mean(samples, axis=0)) if n else 0.0
    if n < 2:
        return Estimate(mean, 0.0)
    return Estimate(mean, float(np.std(samples, ddof=1) / np.sqrt(n)))


def jackknife_ratio(numerator, denominator, power: float = 1.0) -> RatioEstimate:
    """Estimate ``(E num / E den) ** (1 / power)`` with a jackknife error.

    The denominator mean must be positive; callers turn a zero denominator
    into their own degenerate-input error before getting here.
    """
    numerator = np.asarray(numerator, dtype=float)
    denominator = np.asarray(denominator, dtype=float)
    n = numerator.shape[0]
    total_num = np.sum(numerator)
    total_den = np.sum(denominator)
    ratio = float((total_num / total_den) ** (1.0 / power))
    if n < 2:
        return RatioEstimate(ratio, 0.0)

    loo_den = total_den - denominator
    loo_num = total_num - numerator
    safe = loo_den > 0
    loo = np.full(n, ratio)
    loo[safe] = (loo_num[safe] / loo_den[safe]) ** (1.0 / power)
    spread = np.sum((loo - np.mean(loo)) ** 2)
    return RatioEstimate(ratio, float(np.sqrt((n - 1) / n * spread)))


@dataclass(frozen=True)
class DriftReport:
    """Per-step mean increments of a martingale ensemble with their standard errors."""

    mean: np.ndarray
    std_error: np.ndarray

    def within(self, band: float = DRIFT_SE_BAND) -> bool:
        # zero-variance coordinates must have exactly zero mean
        return bool(np.all(np.abs(self.mean) <= band * self.std_error + 1e-12))

    @property
    def worst_z(self) -> float:
        safe = np.where(self.std_error > 0, self.std_error, np.inf)
        return float(np.max(np.abs(self.mean) / safe, initial=0.0))


def drift_report(increments) -> DriftReport:
    """Mean over axis 0 of per-path increments, with standard errors."""
    increments = np.asarray(increments, dtype=float)
    mean = np.mean(increments, axis=0)
    n = increments.shape[0]
    if n < 2:
        return DriftReport(mean, np.zeros_like(mean))
    return DriftReport(mean, np.std(increments, axis=0, ddof=1) / np.sqrt(n))
