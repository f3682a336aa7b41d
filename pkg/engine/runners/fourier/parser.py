from typing import Any, Dict, Optional

import numpy as np

from core.errors import ConfigError, UsageError
from fourier.symbols import (
    SYMBOLS,
    BeurlingAhlfors,
    ConstantSymbol,
    HilbertLine,
    LevyRatio,
    LogSphere,
    MultiplierSymbol,
    PoissonTruncated,
    RieszAlpha,
    RieszDiff,
    SphereAlpha,
    SphereMeasure,
)
from jump.levy import LevyMeasureAtomic

# keys the runners read themselves; the parser ignores them
META_KEYS = ("label", "min_ratio")
COMPOSITE_TYPES = ("levy-dominated", "sphere-dominated")


def complex_value(value, field: str) -> complex:
    """A number, or ``{"re": a, "im": b}``."""
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise ConfigError(field, f"complex values take 're' and 'im', got {sorted(unknown)}")
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field, f"expected a number, got {value!r}")
    return complex(value)


def complex_values(values, field: str) -> np.ndarray:
    if not isinstance(values, list):
        values = [values]
    return np.array([complex_value(v, f"{field}[{i}]") for i, v in enumerate(values)])


class SymbolParser:
    """Builds multiplier symbols from their JSON description.

    The description is an object with a ``type`` (a key of ``SYMBOLS`` or one
    of the composite types) and the symbol's own fields::

        {"type": "riesz-alpha", "axis": 1, "alpha": 2}
        {"type": "levy-ratio", "levy": {"atoms": [[1], [-1]], "weights": [1, 1], "phi": [0.5, 0.5]}}
        {"type": "sphere-alpha", "sphere": {"directions": [[1, 0], [0, 1]], "weights": [1, 1]}, "alpha": 1}
        {"type": "levy-dominated", "small": {...}, "large": {...}}

    Errors name the offending field.
    """

    def parse(self, description: Optional[Dict[str, Any]], field: str = "symbol") -> MultiplierSymbol:
        if not isinstance(description, dict):
            raise ConfigError(field, "expected a symbol object")
        body = {k: v for k, v in description.items() if k not in META_KEYS}
        kind = body.pop("type", None)
        if kind not in SYMBOLS and kind not in COMPOSITE_TYPES:
            known = ", ".join(sorted(list(SYMBOLS) + list(COMPOSITE_TYPES)))
            raise ConfigError(f"{field}.type", f"must be one of {known}; got {kind!r}")
        try:
            return self.build_symbol(kind, body, field)
        except ConfigError:
            raise
        except (UsageError, TypeError, ValueError) as e:
            raise ConfigError(field, str(e))

    def build_symbol(self, kind: str, body: dict, field: str) -> MultiplierSymbol:
        if kind == "constant":
            self._only(body, ("value", "dim"), field)
            return ConstantSymbol(complex_value(body.get("value", 1.0), f"{field}.value"), body.get("dim"))
        if kind == "beurling-ahlfors":
            self._only(body, (), field)
            return BeurlingAhlfors()
        if kind == "hilbert":
            self._only(body, (), field)
            return HilbertLine()
        if kind == "riesz-alpha":
            self._only(body, ("axis", "alpha", "dim"), field)
            return RieszAlpha(
                axis=int(body.get("axis", 1)), alpha=float(body.get("alpha", 2.0)), dim=int(body.get("dim", 2))
            )
        if kind == "riesz-diff":
            self._only(body, ("alpha", "dim"), field)
            return RieszDiff(alpha=float(body.get("alpha", 2.0)), dim=int(body.get("dim", 2)))
        if kind == "levy-ratio":
            self._only(body, ("levy", "sphere"), field)
            V, phi = self.build_levy(body.get("levy"), f"{field}.levy", optional=True)
            mu, psi = self.build_sphere(body.get("sphere"), f"{field}.sphere", optional=True)
            return LevyRatio(V=V, phi=phi, mu=mu, psi=psi)
        if kind == "levy-dominated":
            self._only(body, ("small", "large"), field)
            small, _ = self.build_levy(body.get("small"), f"{field}.small")
            large, _ = self.build_levy(body.get("large"), f"{field}.large")
            return LevyRatio.dominated(small, large)
        if kind == "sphere-dominated":
            self._only(body, ("small", "large"), field)
            small, _ = self.build_sphere(body.get("small"), f"{field}.small")
            large, _ = self.build_sphere(body.get("large"), f"{field}.large")
            return LevyRatio.sphere_dominated(small, large)
        if kind == "sphere-alpha":
            self._only(body, ("sphere", "alpha"), field)
            mu, psi = self.build_sphere(body.get("sphere"), f"{field}.sphere")
            return SphereAlpha(mu=mu, psi=psi, alpha=float(body.get("alpha", 1.0)))
        if kind == "log-sphere":
            self._only(body, ("sphere",), field)
            mu, psi = self.build_sphere(body.get("sphere"), f"{field}.sphere")
            return LogSphere(mu=mu, psi=psi)
        if kind == "poisson-truncated":
            self._only(body, ("levy", "s"), field)
            nu, phi = self.build_levy(body.get("levy"), f"{field}.levy")
            return PoissonTruncated(nu=nu, phi=phi, s=float(body.get("s", -1.0)))
        raise ConfigError(f"{field}.type", f"no builder for {kind}")

    def build_levy(self, description, field: str, optional: bool = False):
        """Atoms and weights of a symmetric measure, plus the optional modulator ``phi``."""
        if description is None and optional:
            return None, None
        if not isinstance(description, dict):
            raise ConfigError(field, "expected an object with atoms and weights")
        self._only(description, ("atoms", "weights", "phi"), field)
        for key in ("atoms", "weights"):
            if key not in description:
                raise ConfigError(f"{field}.{key}", "is required")
        measure = LevyMeasureAtomic(description["atoms"], description["weights"])
        phi = description.get("phi")
        if phi is not None:
            phi = complex_values(phi, f"{field}.phi")
        return measure, phi

    def build_sphere(self, description, field: str, optional: bool = False):
        if description is None and optional:
            return None, None
        if not isinstance(description, dict):
            raise ConfigError(field, "expected an object with directions and weights")
        self._only(description, ("directions", "weights", "psi"), field)
        for key in ("directions", "weights"):
            if key not in description:
                raise ConfigError(f"{field}.{key}", "is required")
        measure = SphereMeasure(description["directions"], description["weights"])
        psi = description.get("psi")
        if psi is not None:
            psi = complex_values(psi, f"{field}.psi")
        return measure, psi

    @staticmethod
    def _only(body: dict, allowed, field: str):
        unknown = sorted(set(body) - set(allowed))
        if unknown:
            raise ConfigError(f"{field}.{unknown[0]}", "unknown symbol field")
