"""Catalogue of multiplier symbols.

Every symbol follows the convention a/0 = 0: wherever a defining denominator
vanishes (in particular at xi = 0) the symbol is 0. Constructors accept any
parameters; bounds such as |phi| <= 1 are checked by ``admissibility_check``.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from core.constants import beta_hilbert
from core.errors import UsageError
from jump.levy import LevyMeasureAtomic
from jump.symbol import PSI_ZERO_TOLERANCE, multiplier_symbol_ms


def _ratio(numerator, denominator, floor: float = 0.0) -> np.ndarray:
    numerator = np.asarray(numerator, dtype=complex)
    denominator = np.asarray(denominator, dtype=float)
    live = denominator > floor
    return np.where(live, numerator / np.where(live, denominator, 1.0), 0.0 + 0.0j)


@dataclass
class SphereMeasure:
    """Finite measure ``sum_i m_i delta_{theta_i}`` on the unit sphere."""

    directions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.directions = np.atleast_2d(np.asarray(self.directions, dtype=float))
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if self.directions.shape[0] != self.weights.shape[0]:
            raise UsageError("Need one weight per sphere atom")
        lengths = np.linalg.norm(self.directions, axis=1)
        if np.any(lengths == 0):
            raise UsageError("Sphere atoms must be nonzero directions")
        self.directions = self.directions / lengths[:, None]

    @property
    def dim(self) -> int:
        return self.directions.shape[1]

    def projections(self, xi) -> np.ndarray:
        return np.asarray(xi, dtype=float) @ self.directions.T


class MultiplierSymbol:
    name = "symbol"
    # None: any dimension
    dim: Optional[int] = None

    def evaluate(self, xi) -> np.ndarray:
        raise NotImplementedError()

    def check_dim(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if self.dim is not None and xi.shape[-1] != self.dim:
            raise UsageError(f"{self.name} acts on R^{self.dim}, got a {xi.shape[-1]}-vector")
        return xi

    def parameters(self) -> dict:
        return {}

    def norm_bound(self, p: float) -> float:
        """Upper bound on the L^p norm of T_m for a scalar or Hilbert target."""
        return beta_hilbert(p)


def eval_symbol(m: MultiplierSymbol, xi) -> np.ndarray:
    return m.evaluate(xi)


@dataclass
class ConstantSymbol(MultiplierSymbol):
    value: complex = 1.0
    dim: Optional[int] = None
    name = "constant"

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        out = np.full(xi.shape[:-1], complex(self.value))
        return np.where(np.all(xi == 0, axis=-1), 0.0 + 0.0j, out)

    def parameters(self):
        return {"value": [complex(self.value).real, complex(self.value).imag]}


@dataclass
class LevyRatio(MultiplierSymbol):
    """Ratio of the modulated and plain generator symbols.

    ``m(xi) = [sum_i (1 - cos xi.z_i) phi_i V_i + 1/2 sum_j (xi.theta_j)^2 psi_j mu_j]
    / [sum_i (1 - cos xi.z_i) V_i + 1/2 sum_j (xi.theta_j)^2 mu_j]``
    """

    V: Optional[LevyMeasureAtomic] = None
    phi: Optional[np.ndarray] = None
    mu: Optional[SphereMeasure] = None
    psi: Optional[np.ndarray] = None
    name = "levy-ratio"

    def __post_init__(self):
        if self.V is None and self.mu is None:
            raise UsageError("LevyRatio needs a Levy measure, a sphere measure, or both")
        if self.V is not None:
            self.phi = (
                np.ones(self.V.n_atoms, dtype=complex)
                if self.phi is None
                else np.atleast_1d(np.asarray(self.phi, dtype=complex))
            )
            if self.phi.shape != (self.V.n_atoms,):
                raise UsageError("phi needs one value per Levy atom")
        if self.mu is not None:
            self.psi = (
                np.ones(self.mu.weights.shape[0], dtype=complex)
                if self.psi is None
                else np.atleast_1d(np.asarray(self.psi, dtype=complex))
            )
            if self.psi.shape != self.mu.weights.shape:
                raise UsageError("psi needs one value per sphere atom")
        dims = {m.dim for m in (self.V, self.mu) if m is not None}
        if len(dims) != 1:
            raise UsageError("Levy and sphere measures live in different dimensions")
        self.dim = dims.pop()

    @classmethod
    def dominated(cls, V1: LevyMeasureAtomic, V2: LevyMeasureAtomic) -> "LevyRatio":
        """Symbol of ``V1 <= V2``: phi is the density of V1 on the atoms of V2."""
        phi = np.zeros(V2.n_atoms)
        for atom, weight in zip(V1.atoms, V1.weights):
            hit = np.flatnonzero(np.all(np.isclose(V2.atoms, atom, rtol=0, atol=1e-12), axis=1))
            if hit.size == 0:
                raise UsageError(f"Atom {atom.tolist()} of V1 is not an atom of V2")
            phi[hit[0]] += weight / V2.weights[hit[0]]
        return cls(V=V2, phi=phi)

    @classmethod
    def sphere_dominated(cls, mu1: SphereMeasure, mu2: SphereMeasure) -> "LevyRatio":
        psi = np.zeros(mu2.weights.shape[0])
        for direction, weight in zip(mu1.directions, mu1.weights):
            hit = np.flatnonzero(
                np.all(np.isclose(mu2.directions, direction, rtol=0, atol=1e-12), axis=1)
            )
            if hit.size == 0:
                raise UsageError(f"Direction {direction.tolist()} of mu1 is not an atom of mu2")
            psi[hit[0]] += weight / mu2.weights[hit[0]]
        return cls(mu=mu2, psi=psi)

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        numerator = np.zeros(xi.shape[:-1], dtype=complex)
        denominator = np.zeros(xi.shape[:-1])
        if self.V is not None:
            jump = 2.0 * np.sin((xi @ self.V.atoms.T) / 2) ** 2 * self.V.weights
            numerator = numerator + jump @ self.phi
            denominator = denominator + np.sum(jump, axis=-1)
        if self.mu is not None:
            quadratic = 0.5 * self.mu.projections(xi) ** 2 * self.mu.weights
            numerator = numerator + quadratic @ self.psi
            denominator = denominator + np.sum(quadratic, axis=-1)
        mass = sum(float(np.sum(m.weights)) for m in (self.V, self.mu) if m is not None)
        return _ratio(numerator, denominator, PSI_ZERO_TOLERANCE * mass)

    def parameters(self):
        out = {}
        if self.V is not None:
            out["atoms"] = self.V.atoms.tolist()
            out["weights"] = self.V.weights.tolist()
        if self.mu is not None:
            out["directions"] = self.mu.directions.tolist()
            out["sphere_weights"] = self.mu.weights.tolist()
        return out


@dataclass
class BeurlingAhlfors(MultiplierSymbol):
    """``conj(z)^2 / |z|^2`` with ``z = xi_1 + i xi_2``."""

    name = "beurling-ahlfors"
    dim = 2

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        z = xi[..., 0] + 1j * xi[..., 1]
        return _ratio(np.conj(z) ** 2, np.abs(z) ** 2)

    def norm_bound(self, p: float) -> float:
        return 2.0 * beta_hilbert(p)


@dataclass
class RieszAlpha(MultiplierSymbol):
    """``|xi_j|^alpha / sum_i |xi_i|^alpha``; ``axis`` counts from 1."""

    axis: int = 1
    alpha: float = 2.0
    dim: int = 2
    name = "riesz-alpha"

    def __post_init__(self):
        if not 1 <= self.axis <= self.dim:
            raise UsageError(f"axis must lie in [1, {self.dim}], got {self.axis}")

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        powers = np.abs(xi) ** self.alpha
        return _ratio(powers[..., self.axis - 1], np.sum(powers, axis=-1))

    def parameters(self):
        return {"axis": self.axis, "alpha": self.alpha, "dim": self.dim}


@dataclass
class RieszDiff(MultiplierSymbol):
    """``(|xi_1|^alpha - |xi_2|^alpha) / sum_i |xi_i|^alpha``."""

    alpha: float = 2.0
    dim: int = 2
    name = "riesz-diff"

    def __post_init__(self):
        if self.dim < 2:
            raise UsageError(f"RieszDiff needs d >= 2, got {self.dim}")

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        nonzero = np.abs(xi) > 0
        # |t|^0 is 1 off the origin only
        powers = np.where(nonzero, np.abs(xi) ** self.alpha, 0.0)
        return _ratio(powers[..., 0] - powers[..., 1], np.sum(powers, axis=-1))

    def parameters(self):
        return {"alpha": self.alpha, "dim": self.dim}


@dataclass
class SphereAlpha(MultiplierSymbol):
    """``sum_j |xi.theta_j|^alpha psi_j mu_j / sum_j |xi.theta_j|^alpha mu_j``."""

    mu: SphereMeasure = None
    psi: np.ndarray = None
    alpha: float = 1.0
    name = "sphere-alpha"

    def __post_init__(self):
        if self.mu is None:
            raise UsageError("SphereAlpha needs a sphere measure")
        self.psi = np.atleast_1d(np.asarray(1.0 if self.psi is None else self.psi, dtype=complex))
        self.psi = np.broadcast_to(self.psi, self.mu.weights.shape).copy()
        self.dim = self.mu.dim

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        terms = np.abs(self.mu.projections(xi)) ** self.alpha * self.mu.weights
        return _ratio(terms @ self.psi, np.sum(terms, axis=-1))

    def parameters(self):
        return {"alpha": self.alpha, "directions": self.mu.directions.tolist()}


@dataclass
class LogSphere(MultiplierSymbol):
    """Ratio of ``log(1 + (xi.theta)^-2)``-weighted sphere averages.

    The weight blows up where ``xi.theta = 0``; there the symbol takes its
    limit, the psi-average over the directions orthogonal to xi.
    """

    mu: SphereMeasure = None
    psi: np.ndarray = None
    name = "log-sphere"

    def __post_init__(self):
        if self.mu is None:
            raise UsageError("LogSphere needs a sphere measure")
        self.psi = np.atleast_1d(np.asarray(1.0 if self.psi is None else self.psi, dtype=complex))
        self.psi = np.broadcast_to(self.psi, self.mu.weights.shape).copy()
        self.dim = self.mu.dim

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        t = self.mu.projections(xi)
        orthogonal = t == 0
        safe = np.where(orthogonal, 1.0, t)
        terms = np.where(orthogonal, 0.0, np.log1p(safe**-2.0)) * self.mu.weights
        regular = _ratio(terms @ self.psi, np.sum(terms, axis=-1))
        singular_mass = orthogonal * self.mu.weights
        singular = _ratio(singular_mass @ self.psi, np.sum(singular_mass, axis=-1))
        out = np.where(np.any(orthogonal, axis=-1), singular, regular)
        return np.where(np.all(xi == 0, axis=-1), 0.0 + 0.0j, out)


@dataclass
class HilbertLine(MultiplierSymbol):
    """``-i sign(t)`` on the line."""

    name = "hilbert"
    dim = 1

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        return -1j * np.sign(xi[..., 0])

    def norm_bound(self, p: float) -> float:
        return beta_hilbert(p) ** 2


@dataclass
class PoissonTruncated(MultiplierSymbol):
    """The symbol ``m_s`` of the parabolic construction started at time ``s < 0``."""

    nu: LevyMeasureAtomic = None
    phi: np.ndarray = None
    s: float = -1.0
    name = "poisson-truncated"

    def __post_init__(self):
        if self.nu is None:
            raise UsageError("PoissonTruncated needs a Levy measure")
        if not self.s < 0:
            raise UsageError(f"Start time must be negative, got {self.s}")
        self.phi = np.atleast_1d(np.asarray(1.0 if self.phi is None else self.phi, dtype=complex))
        self.phi = np.broadcast_to(self.phi, self.nu.weights.shape).copy()
        self.dim = self.nu.dim

    def evaluate(self, xi):
        xi = self.check_dim(xi)
        return multiplier_symbol_ms(self.nu, self.phi, self.s, xi)


SYMBOLS = {
    "constant": ConstantSymbol,
    "levy-ratio": LevyRatio,
    "beurling-ahlfors": BeurlingAhlfors,
    "riesz-alpha": RieszAlpha,
    "riesz-diff": RieszDiff,
    "sphere-alpha": SphereAlpha,
    "log-sphere": LogSphere,
    "hilbert": HilbertLine,
    "poisson-truncated": PoissonTruncated,
}
