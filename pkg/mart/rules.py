"""Predictable rules for coefficients and transform factors.

A rule is called as ``rule(step, history)`` where ``history`` holds the
driving noise of steps ``1..step-1`` only, shape ``(n_paths, step - 1)``.
Nothing about the current or later noise is visible, so every process built
from a rule is predictable by construction. Step 0 receives an empty history.
"""
from typing import Dict, List, Sequence

import numpy as np

from core.errors import ContractViolation, UsageError
from lab.seeding import rng_stream, stream_tag

# Prefix tables have 2^(n-1) rows at step n
MAX_TABLE_DEPTH = 24


def prefix_code(history: np.ndarray) -> np.ndarray:
    """Integer code of the sign pattern of each history row (bit j = sign of step j+1)."""
    history = np.asarray(history)
    if history.shape[1] > MAX_TABLE_DEPTH:
        raise UsageError(f"Prefix tables support at most {MAX_TABLE_DEPTH} steps")
    bits = (history > 0).astype(np.int64)
    return bits @ (np.int64(1) << np.arange(history.shape[1], dtype=np.int64))


class CoefficientRule:
    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        raise NotImplementedError()


class ConstantRule(CoefficientRule):
    def __init__(self, vector):
        self.vector = np.atleast_1d(np.asarray(vector, dtype=float))

    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        return np.broadcast_to(self.vector, (history.shape[0], self.vector.shape[0]))


class HistoryProductRule(CoefficientRule):
    """``phi_n = vector * prod_{j < n} eps_j``; ``phi_1 = vector``."""

    def __init__(self, vector):
        self.vector = np.atleast_1d(np.asarray(vector, dtype=float))

    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        return np.prod(history, axis=1)[:, None] * self.vector


class TableRule(CoefficientRule):
    """Coefficients looked up by the sign pattern of the history.

    ``tables[n - 1]`` has shape ``(2 ** (n - 1), dim)``.
    """

    def __init__(self, tables: Sequence[np.ndarray]):
        self.tables: List[np.ndarray] = [np.asarray(t, dtype=float) for t in tables]
        for n, table in enumerate(self.tables, start=1):
            if table.ndim != 2 or table.shape[0] != 2 ** (n - 1):
                raise UsageError(f"Table for step {n} must have {2 ** (n - 1)} rows")

    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        if not 1 <= step <= len(self.tables):
            raise UsageError(f"No coefficient table for step {step}")
        return self.tables[step - 1][prefix_code(history)]


class FactorRule:
    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        raise NotImplementedError()

    @staticmethod
    def checked(values: np.ndarray) -> np.ndarray:
        if np.any(np.abs(values) > 1.0):
            raise ContractViolation("Factor rule produced |a| > 1")
        return values


class ConstantFactor(FactorRule):
    def __init__(self, a: float):
        if abs(a) > 1.0:
            raise ContractViolation(f"Constant factor must satisfy |a| <= 1, got {a}")
        self.a = float(a)

    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        return np.full(history.shape[0], self.a)


class PredictableSignFactor(FactorRule):
    """``a_n = sign(eps_{n-1})`` with ``a_0 = a_1 = 1``: a classical +-1 transform."""

    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        if history.shape[1] == 0:
            return np.ones(history.shape[0])
        return np.where(history[:, -1] >= 0, 1.0, -1.0)


class TableFactorRule(FactorRule):
    """Factors looked up by history sign pattern; ``tables[n]`` has ``2 ** max(n - 1, 0)`` rows."""

    def __init__(self, tables: Sequence[np.ndarray]):
        self.tables = [self.checked(np.asarray(t, dtype=float)) for t in tables]
        for n, table in enumerate(self.tables):
            if table.shape != (2 ** max(n - 1, 0),):
                raise UsageError(f"Factor table for step {n} must have {2 ** max(n - 1, 0)} entries")

    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        if not 0 <= step < len(self.tables):
            raise UsageError(f"No factor table for step {step}")
        return self.tables[step][prefix_code(history)]


class RandomFactorRule(FactorRule):
    """Seeded factors uniform in [low, high], one draw per step and sign pattern."""

    def __init__(self, seed: int, low: float = -1.0, high: float = 1.0):
        if not -1.0 <= low <= high <= 1.0:
            raise ContractViolation(f"Factor range [{low}, {high}] leaves [-1, 1]")
        self.seed = seed
        self.low = low
        self.high = high
        self._tables: Dict[int, np.ndarray] = {}

    def table(self, step: int) -> np.ndarray:
        if step not in self._tables:
            rng = rng_stream(self.seed, stream_tag("mart", "random-factor"), block=step)
            self._tables[step] = rng.uniform(self.low, self.high, 2 ** max(step - 1, 0))
        return self._tables[step]

    def __call__(self, step: int, history: np.ndarray) -> np.ndarray:
        return self.table(step)[prefix_code(history)]


COEFFICIENT_RULES = {
    "constant": ConstantRule,
    "history-product": HistoryProductRule,
}

FACTOR_RULES = {
    "constant": ConstantFactor,
    "predictable-sign": PredictableSignFactor,
    "random": RandomFactorRule,
}
