import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np


def plain(value):
    """Convert numpy scalars and arrays (also nested in lists/dicts) into JSON-ready values."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [plain(value.real), plain(value.imag)]
    return value


@dataclass
class Assertion:
    name: str
    value: float
    bound: float
    passed: bool
    std_error: Optional[float] = None


@dataclass
class ExperimentReport:
    name: str
    kind: str
    seed: int
    params: Dict[str, Any]
    assertions: List[Assertion] = field(default_factory=list)
    observations: Dict[str, Any] = field(default_factory=dict)
    # one row per scenario, the table written by --format csv/jsonl
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def check(
        self,
        name: str,
        value,
        bound,
        passed,
        std_error=None,
    ) -> bool:
        """Record one assertion; ``passed`` is decided by the caller."""
        self.assertions.append(
            Assertion(
                name=name,
                value=plain(value),
                bound=plain(bound),
                passed=bool(passed),
                std_error=None if std_error is None else plain(std_error),
            )
        )
        return bool(passed)

    def check_at_most(self, name: str, value, bound, std_error=None) -> bool:
        return self.check(name, value, bound, float(value) <= float(bound), std_error)

    def check_at_least(self, name: str, value, bound, std_error=None) -> bool:
        return self.check(name, value, bound, float(value) >= float(bound), std_error)

    def observe(self, name: str, value):
        self.observations[name] = plain(value)

    def add_row(self, **row):
        self.rows.append(plain(row))

    def failures(self) -> List[Assertion]:
        return [a for a in self.assertions if not a.passed]

