from dataclasses import dataclass
from typing import Union

import numpy as np

from core.errors import DomainError


@dataclass(frozen=True)
class Exponent:
    p: float

    def __post_init__(self):
        p = float(self.p)
        if not np.isfinite(p) or p <= 1.0:
            raise DomainError(f"Exponent must lie in (1, inf), got {self.p}")
        object.__setattr__(self, "p", p)

    @classmethod
    def of(cls, p: Union["Exponent", float]) -> "Exponent":
        return p if isinstance(p, Exponent) else cls(p)

    @property
    def conjugate(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def pstar(self) -> float:
        return max(self.p, self.conjugate)


def beta_hilbert(p: Union[Exponent, float]) -> float:
    """UMD constant of a Hilbert space (and of the scalar field): p* - 1."""
    return Exponent.of(p).pstar - 1.0
