import numpy as np

from core.errors import UsageError
from jump.parabolic import ParabolicEnsemble, ParabolicPair
from jump.paths import StepPath
from lab.stats import DriftReport, drift_report


def discrete_qv(path: StepPath, functional, mesh) -> float:
    """``sum_n <M(t_n) - M(t_{n-1}), x*>^2`` over the partition ``mesh``."""
    mesh = np.asarray(mesh, dtype=float)
    if mesh.ndim != 1 or mesh.shape[0] < 2 or np.any(np.diff(mesh) <= 0):
        raise UsageError("The mesh must be an increasing partition with at least two points")
    functional = np.atleast_1d(np.asarray(functional, dtype=float))
    if functional.shape[0] != path.values.shape[1]:
        raise UsageError(
            f"Functional has {functional.shape[0]} coordinates, path has {path.values.shape[1]}"
        )
    samples = path.at(mesh) @ functional
    return float(np.sum(np.diff(samples) ** 2))


def jump_qv_increments(pair: ParabolicPair, functional):
    """Per-jump quadratic variation increments ``(<dF, x*>^2, <dG, x*>^2)``."""
    functional = np.atleast_1d(np.asarray(functional, dtype=float))
    return (pair.dF @ functional) ** 2, (pair.dG @ functional) ** 2


def parabolic_drift(ensemble: ParabolicEnsemble):
    """Mean of ``G_t - G_s`` and of ``F_t`` at every report time, with standard errors."""
    G_drift: DriftReport = drift_report(ensemble.G - ensemble.G[:, :1])
    F_drift: DriftReport = drift_report(ensemble.F)
    return G_drift, F_drift
