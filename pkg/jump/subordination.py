import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.constants import Exponent, beta_hilbert
from core.errors import DegenerateInputError
from jump.parabolic import ParabolicEnsemble
from lab.defaults import SE_BAND
from lab.stats import RatioEstimate, jackknife_ratio

logger = logging.getLogger(__name__)


@dataclass
class JumpSubordinationReport:
    p: float
    beta: float
    moment_ratio: RatioEstimate

    @property
    def bound(self) -> float:
        return self.beta**self.p

    @property
    def passed(self) -> bool:
        return self.moment_ratio.within(self.bound, SE_BAND)


def check_jump_subordination(
    ensemble: ParabolicEnsemble, p: float, beta: Optional[float] = None
) -> JumpSubordinationReport:
    """Compare ``E|F_u|^p / E|G_u|^p`` with ``beta^p`` (default beta = p* - 1)."""
    p = Exponent.of(p).p
    beta = beta_hilbert(p) if beta is None else beta
    numerator = np.linalg.norm(ensemble.F_final, axis=-1) ** p
    denominator = np.linalg.norm(ensemble.G_final, axis=-1) ** p
    if not np.sum(denominator) > 0:
        raise DegenerateInputError("E|G_u|^p is zero; the boundary data vanish along every path")
    ratio = jackknife_ratio(numerator, denominator)
    logger.info("jump subordination p=%g: ratio %.6f vs bound %.6f", p, ratio.ratio, beta**p)
    return JumpSubordinationReport(p, beta, ratio)
