import numpy as np

from core.errors import UsageError
from jump.levy import LevyMeasureAtomic
from lab.seeding import rng_stream, stream_tag

# Psi below this fraction of |nu| counts as zero (lattice nulls of sin^2 land near 1e-32)
PSI_ZERO_TOLERANCE = 1e-20

_CASES_TAG = stream_tag("jump", "symbol-cases")
MAX_CASE_ATOMS = 4


def symmetric_modulator(nu: LevyMeasureAtomic, phi) -> np.ndarray:
    """Broadcast ``phi`` to one value per atom and check ``phi(-z) = phi(z)``."""
    if not nu.symmetric:
        raise UsageError("Multiplier symbols need a symmetric Levy measure")
    phi = np.broadcast_to(np.asarray(phi, dtype=complex), nu.weights.shape).copy()
    if np.any(np.abs(phi - phi[nu.mirror]) > 1e-12):
        raise UsageError("phi must take equal values on z and -z")
    return phi


def _generator_terms(nu: LevyMeasureAtomic, phi: np.ndarray, xi):
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != nu.dim:
        raise UsageError(f"Frequency has {xi.shape[-1]} coordinates, measure lives in R^{nu.dim}")
    half = 2.0 * np.sin((xi @ nu.atoms.T) / 2) ** 2 * nu.weights
    psi = -np.sum(half, axis=-1)
    # int (e^{i xi.z} - 1) phi dnu: the sine part integrates to zero against
    # a symmetric nu and phi, leaving int (cos - 1) phi dnu
    transformed = -(half @ phi)
    return psi, transformed


def limit_symbol(nu: LevyMeasureAtomic, phi, xi) -> np.ndarray:
    """``m(xi) = Psi(xi)^-1 int (e^{i xi.z} - 1) phi(z) nu(dz)``, zero where Psi vanishes."""
    phi = symmetric_modulator(nu, phi)
    psi, transformed = _generator_terms(nu, phi, xi)
    null = np.abs(psi) <= PSI_ZERO_TOLERANCE * nu.total_mass
    return np.where(null, 0.0 + 0.0j, transformed / np.where(null, 1.0, psi))


def multiplier_symbol_ms(nu: LevyMeasureAtomic, phi, s: float, xi) -> np.ndarray:
    """``m_s(xi) = (1 - e^{2|s| Psi(xi)}) m(xi)`` for a start time ``s < 0``."""
    if not s < 0:
        raise UsageError(f"Start time must be negative, got {s}")
    phi = symmetric_modulator(nu, phi)
    psi, _ = _generator_terms(nu, phi, xi)
    return -np.expm1(2 * abs(s) * psi) * limit_symbol(nu, phi, xi)


def random_symbol_case(rng: np.random.Generator, dim: int = 1, max_atoms: int = MAX_CASE_ATOMS):
    """A symmetric atomic nu, an even phi with |phi| <= 1, a start time s < 0 and a frequency."""
    n = int(rng.integers(1, max_atoms + 1))
    nu = LevyMeasureAtomic.symmetrize(rng.normal(scale=2.0, size=(n, dim)), rng.exponential(size=n))
    raw = rng.uniform(0.0, 1.0, nu.n_atoms) * np.exp(2j * np.pi * rng.uniform(size=nu.n_atoms))
    # both atoms of a mirrored pair read the value of the lower index
    phi = raw[np.minimum(np.arange(nu.n_atoms), nu.mirror)]
    s = -(rng.exponential(2.0) + 1e-3)
    xi = rng.normal(scale=3.0, size=dim)
    return nu, phi, s, xi


def random_symbol_bound(seed: int, n_cases: int, dim: int = 1) -> float:
    """Largest ``|m_s(xi)|`` over ``n_cases`` seeded random cases."""
    rng = rng_stream(seed, _CASES_TAG)
    worst = 0.0
    for _ in range(n_cases):
        nu, phi, s, xi = random_symbol_case(rng, dim)
        worst = max(worst, float(np.abs(multiplier_symbol_ms(nu, phi, s, xi))))
    return worst
