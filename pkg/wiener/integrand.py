"""Elementary progressive integrands.

A StepIntegrand is constant on each interval ``(t_{j-1}, t_j]`` with a k x h
matrix value. The value is either fixed data or an adapted rule called as
``rule(j, history)``, where ``history`` is the Brownian path sampled on the
time grid up to and including ``t_{j-1}``, shape ``(n_paths, m, h)``; the
rule returns ``(n_paths, k, h)``.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from core.errors import ContractViolation, UsageError

AdaptedRule = Callable[[int, np.ndarray], np.ndarray]
ScalarRule = Callable[[int, np.ndarray], np.ndarray]


@dataclass
class StepIntegrand:
    breakpoints: np.ndarray
    values: Optional[np.ndarray] = None
    rule: Optional[AdaptedRule] = None
    shape: Optional[tuple] = None

    def __post_init__(self):
        self.breakpoints = np.asarray(self.breakpoints, dtype=float)
        if self.breakpoints.ndim != 1 or self.breakpoints.shape[0] < 2:
            raise UsageError("Need at least one interval")
        if self.breakpoints[0] != 0 or np.any(np.diff(self.breakpoints) <= 0):
            raise UsageError("Breakpoints must start at 0 and increase strictly")
        if (self.values is None) == (self.rule is None):
            raise UsageError("Give either fixed values or an adapted rule")
        if self.values is not None:
            self.values = np.asarray(self.values, dtype=float)
            if self.values.ndim == 1:
                self.values = self.values[:, None, None]
            if self.values.ndim != 3 or self.values.shape[0] != self.intervals:
                raise UsageError(f"Values must have shape ({self.intervals}, k, h)")
            self.shape = self.values.shape[1:]
        elif self.shape is None:
            raise UsageError("Rule-based integrands need their (k, h) shape")

    @property
    def intervals(self) -> int:
        return self.breakpoints.shape[0] - 1

    @property
    def k(self) -> int:
        return self.shape[0]

    @property
    def h(self) -> int:
        return self.shape[1]

    @property
    def deterministic(self) -> bool:
        return self.values is not None

    @classmethod
    def constant(cls, matrix, T: float = 1.0) -> "StepIntegrand":
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        return cls(np.array([0.0, T]), matrix[None])

    def value(self, j: int, history: np.ndarray) -> np.ndarray:
        """Value on interval ``j`` (0-based) for every path, shape ``(n_paths, k, h)``."""
        n_paths = history.shape[0]
        if self.values is not None:
            return np.broadcast_to(self.values[j], (n_paths,) + self.shape)
        out = np.asarray(self.rule(j, history), dtype=float)
        if out.shape != (n_paths,) + self.shape:
            raise UsageError(f"Rule returned shape {out.shape}, expected {(n_paths,) + self.shape}")
        return out

    def times_matrix(self, A) -> "StepIntegrand":
        """The integrand ``Phi A`` for an h x h matrix A."""
        A = np.asarray(A, dtype=float)
        if self.values is not None:
            return StepIntegrand(self.breakpoints, self.values @ A)
        base = self.rule

        def rule(j, history):
            return base(j, history) @ A

        return StepIntegrand(self.breakpoints, rule=rule, shape=self.shape)

    def scaled_by(self, factor: ScalarRule) -> "StepIntegrand":
        """The integrand ``a Phi`` for an adapted scalar rule with |a| <= 1."""
        base = self

        def rule(j, history):
            a = np.asarray(factor(j, history), dtype=float)
            if np.any(np.abs(a) > 1.0):
                raise ContractViolation("Transform factor must satisfy |a| <= 1")
            return a[:, None, None] * base.value(j, history)

        return StepIntegrand(self.breakpoints, rule=rule, shape=self.shape)

    @staticmethod
    def side_by_side(first: "StepIntegrand", second: "StepIntegrand") -> "StepIntegrand":
        """``[first second]``: driven by the coordinates of both, k x (h1 + h2)."""
        if not np.array_equal(first.breakpoints, second.breakpoints):
            raise UsageError("Integrands must share breakpoints")
        if first.k != second.k:
            raise UsageError("Integrands must have the same number of components")
        if first.deterministic and second.deterministic:
            return StepIntegrand(first.breakpoints, np.concatenate([first.values, second.values], axis=2))
        h1 = first.h

        def rule(j, history):
            return np.concatenate(
                [first.value(j, history[..., :h1]), second.value(j, history[..., h1:])], axis=2
            )

        return StepIntegrand(first.breakpoints, rule=rule, shape=(first.k, h1 + second.h))


class ConstantFactorRule:
    def __init__(self, a: float):
        if abs(a) > 1.0:
            raise ContractViolation(f"Factor must satisfy |a| <= 1, got {a}")
        self.a = float(a)

    def __call__(self, j, history):
        return np.full(history.shape[0], self.a)


class SignOfPathRule:
    """``a = sign(W(t_{j-1}))`` of the first coordinate, with sign(0) = 1."""

    def __call__(self, j, history):
        return np.where(history[:, -1, 0] >= 0, 1.0, -1.0)


class BoundedFactorRule:
    """``a = tanh(scale * W(t_{j-1}))`` of the first coordinate."""

    def __init__(self, scale: float = 1.0):
        self.scale = scale

    def __call__(self, j, history):
        return np.tanh(self.scale * history[:, -1, 0])


FACTOR_RULES = {
    "constant": ConstantFactorRule,
    "sign-of-path": SignOfPathRule,
    "bounded": BoundedFactorRule,
}
