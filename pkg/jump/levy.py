from dataclasses import dataclass, field

import numpy as np

from core.errors import UsageError

SYMMETRY_TOLERANCE = 1e-12


@dataclass
class LevyMeasureAtomic:
    """Finitely supported Levy measure ``sum_i w_i delta_{z_i}`` on R^d."""

    atoms: np.ndarray
    weights: np.ndarray
    symmetric: bool = True
    _mirror: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.atoms = np.atleast_2d(np.asarray(self.atoms, dtype=float))
        self.weights = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if self.atoms.shape[0] != self.weights.shape[0] or self.atoms.shape[0] == 0:
            raise UsageError(
                f"Need one positive weight per atom, got {self.atoms.shape[0]} atoms "
                f"and {self.weights.shape[0]} weights"
            )
        if not np.all(np.isfinite(self.atoms)) or not np.all(np.isfinite(self.weights)):
            raise UsageError("Atoms and weights must be finite")
        if np.any(self.weights <= 0):
            raise UsageError("Levy measure weights must be positive")
        if np.any(np.all(self.atoms == 0, axis=1)):
            raise UsageError("A Levy measure has no mass at the origin")
        self._mirror = self._find_mirror()
        if self.symmetric and np.any(self._mirror < 0):
            raise UsageError("Symmetric Levy measure needs every -z_i among the atoms with equal weight")

    def _find_mirror(self) -> np.ndarray:
        """Index of the atom at ``-z_i`` with the same weight, or -1."""
        gap = np.abs(self.atoms[:, None, :] + self.atoms[None, :, :]).max(axis=2)
        same = np.abs(self.weights[:, None] - self.weights[None, :]) <= SYMMETRY_TOLERANCE * (
            np.maximum(self.weights[:, None], self.weights[None, :])
        )
        match = (gap <= SYMMETRY_TOLERANCE) & same
        return np.where(np.any(match, axis=1), np.argmax(match, axis=1), -1)

    @property
    def dim(self) -> int:
        return self.atoms.shape[1]

    @property
    def n_atoms(self) -> int:
        return self.atoms.shape[0]

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.weights))

    @property
    def mirror(self) -> np.ndarray:
        return self._mirror

    @classmethod
    def symmetrize(cls, atoms, weights) -> "LevyMeasureAtomic":
        """``(nu + nu(-.)) / 2`` with coinciding atoms merged."""
        atoms = np.atleast_2d(np.asarray(atoms, dtype=float))
        weights = np.atleast_1d(np.asarray(weights, dtype=float))
        both = np.concatenate([atoms, -atoms])
        mass = np.concatenate([weights, weights]) / 2
        unique, inverse = np.unique(both, axis=0, return_inverse=True)
        merged = np.zeros(unique.shape[0])
        np.add.at(merged, inverse.reshape(-1), mass)
        return cls(unique, merged, symmetric=True)

    @classmethod
    def on_lattice(cls, spacing: float, offsets, weights) -> "LevyMeasureAtomic":
        """Symmetric measure on the lattice ``spacing * Z^d``; offsets are integer vectors."""
        offsets = np.atleast_2d(np.asarray(offsets))
        if not np.all(offsets == np.round(offsets)):
            raise UsageError("Lattice offsets must be integers")
        return cls.symmetrize(offsets * float(spacing), weights)

    @classmethod
    def two_point(cls, z, w: float = 1.0) -> "LevyMeasureAtomic":
        z = np.atleast_1d(np.asarray(z, dtype=float))
        return cls(np.stack([z, -z]), [w / 2, w / 2])

    def psi(self, xi) -> np.ndarray:
        """Characteristic exponent ``sum_i w_i (cos(xi . z_i) - 1)``, batched over ``xi``."""
        xi = np.asarray(xi, dtype=float)
        if xi.shape[-1] != self.dim:
            raise UsageError(f"Frequency has {xi.shape[-1]} coordinates, measure lives in R^{self.dim}")
        # 1 - cos = 2 sin^2(./2) keeps small frequencies accurate
        phase = xi @ self.atoms.T
        return -2.0 * np.sin(phase / 2) ** 2 @ self.weights


def psi(nu: LevyMeasureAtomic, xi) -> np.ndarray:
    if not nu.symmetric:
        raise UsageError("psi is defined here for symmetric Levy measures")
    return nu.psi(xi)
