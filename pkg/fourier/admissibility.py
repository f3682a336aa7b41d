import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.errors import NotAdmissibleError
from fourier.symbols import (
    ConstantSymbol,
    LevyRatio,
    LogSphere,
    MultiplierSymbol,
    PoissonTruncated,
    RieszAlpha,
    RieszDiff,
    SphereAlpha,
)
from lab.defaults import ADMISSIBILITY_SAMPLES, ADMISSIBILITY_TOLERANCE
from lab.seeding import rng_stream, stream_tag

logger = logging.getLogger(__name__)


@dataclass
class AdmissibilityReport:
    symbol: str
    samples: int
    max_modulus: float
    violations: List[str] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return not self.violations


def _bounded(values, label: str, violations: List[str]):
    values = np.asarray(values)
    worst = np.flatnonzero(np.abs(values) > 1.0 + ADMISSIBILITY_TOLERANCE)
    for i in worst:
        violations.append(f"|{label}[{i}]| = {abs(values[i]):.6g} exceeds 1")


def parameter_violations(m: MultiplierSymbol) -> List[str]:
    violations: List[str] = []
    if isinstance(m, LevyRatio):
        if m.V is not None:
            _bounded(m.phi, "phi", violations)
        if m.mu is not None:
            _bounded(m.psi, "psi", violations)
            if np.any(m.mu.weights <= 0):
                violations.append("sphere measure weights must be positive")
    elif isinstance(m, (SphereAlpha, LogSphere)):
        _bounded(m.psi, "psi", violations)
        if np.any(m.mu.weights <= 0):
            violations.append("sphere measure weights must be positive")
        if isinstance(m, SphereAlpha) and not 0 < m.alpha < 2:
            violations.append(f"alpha = {m.alpha} outside (0, 2)")
    elif isinstance(m, RieszAlpha):
        if not 0 < m.alpha <= 2:
            violations.append(f"alpha = {m.alpha} outside (0, 2]")
    elif isinstance(m, RieszDiff):
        if not 0 <= m.alpha <= 2:
            violations.append(f"alpha = {m.alpha} outside [0, 2]")
    elif isinstance(m, PoissonTruncated):
        _bounded(m.phi, "phi", violations)
    elif isinstance(m, ConstantSymbol):
        _bounded([m.value], "value", violations)
    return violations


def sample_frequencies(dim: int, n: int, seed: int) -> np.ndarray:
    """Random directions at log-uniform radii in [1e-3, 1e3], plus the coordinate axes."""
    rng = rng_stream(seed, stream_tag("fourier", "admissibility"))
    directions = rng.standard_normal((n, dim))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = 10.0 ** rng.uniform(-3, 3, size=n)
    axes = np.concatenate([np.eye(dim), -np.eye(dim)])
    return np.concatenate([directions * radii[:, None], axes])


def admissibility_check(
    m: MultiplierSymbol,
    samples: int = ADMISSIBILITY_SAMPLES,
    seed: int = 0,
    dim: Optional[int] = None,
    strict: bool = False,
) -> AdmissibilityReport:
    violations = parameter_violations(m)
    dim = m.dim or dim or 1
    xi = sample_frequencies(dim, samples, seed)
    modulus = np.abs(m.evaluate(xi))
    worst = float(np.max(modulus))
    if worst > 1.0 + ADMISSIBILITY_TOLERANCE:
        at = xi[int(np.argmax(modulus))]
        violations.append(f"|m(xi)| = {worst:.15g} exceeds 1 at xi = {at.tolist()}")
    if not np.all(np.isfinite(modulus)):
        violations.append("symbol is not finite on the sample")
    report = AdmissibilityReport(m.name, xi.shape[0], worst, violations)
    if violations:
        logger.info("%s rejected: %s", m.name, "; ".join(violations))
        if strict:
            raise NotAdmissibleError(violations)
    return report
