from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from core.errors import ContractViolation, UsageError
from core.spaces import NormedSpace

# |a_n| <= 1 is exact; this only absorbs float noise from callers
FACTOR_TOLERANCE = 1e-12


@dataclass
class DiscretePathEnsemble:
    """Batch of discrete martingale paths.

    ``increments`` has shape ``(n_paths, depth + 1, dim)``; step 0 holds the
    starting point f_0 and steps 1..depth the differences df_n. ``history``
    keeps the driving noise of steps 1..depth, shape ``(n_paths, depth)``,
    and is what adapted rules are evaluated on. ``exact`` marks ensembles that
    enumerate every sign pattern with equal weight, whose moments carry no
    sampling error.
    """

    space: NormedSpace
    increments: np.ndarray
    seed: Optional[int] = None
    history: Optional[np.ndarray] = None
    exact: bool = False
    values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.increments = np.asarray(self.increments, dtype=float)
        if self.increments.ndim != 3 or self.increments.shape[2] != self.space.dim:
            raise UsageError(
                f"Increments must have shape (n_paths, depth + 1, {self.space.dim}), "
                f"got {self.increments.shape}"
            )
        if not np.all(np.isfinite(self.increments)):
            raise UsageError("Path increments must be finite")
        if self.history is not None and self.history.shape != (self.n_paths, self.depth):
            raise UsageError(
                f"History must have shape {(self.n_paths, self.depth)}, got {self.history.shape}"
            )
        self.values = np.cumsum(self.increments, axis=1)

    @property
    def n_paths(self) -> int:
        return self.increments.shape[0]

    @property
    def depth(self) -> int:
        return self.increments.shape[1] - 1

    def step(self, n: int) -> np.ndarray:
        """Values f_n of every path, shape ``(n_paths, dim)``."""
        if not 0 <= n <= self.depth:
            raise UsageError(f"Step must lie in [0, {self.depth}], got {n}")
        return self.values[:, n]


@dataclass
class FactorProcess:
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise UsageError(f"Factors must have shape (n_paths, depth + 1), got {self.values.shape}")
        worst = float(np.max(np.abs(self.values), initial=0.0))
        if not np.isfinite(worst) or worst > 1.0 + FACTOR_TOLERANCE:
            raise ContractViolation(f"Transform factors must satisfy |a_n| <= 1, found {worst}")
        self.values = np.clip(self.values, -1.0, 1.0)

    @classmethod
    def constant(cls, ensemble: DiscretePathEnsemble, a: float) -> "FactorProcess":
        return cls(np.full((ensemble.n_paths, ensemble.depth + 1), float(a)))
