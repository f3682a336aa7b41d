"""Lower bounds on ``||T_m||_{L^p -> L^p}`` over a periodic grid.

The search maximizes ``||T_m f||_p / ||f||_p`` by the duality-map iteration
``f <- J_p'(T_m^* J_p(T_m f))`` with ``J_r(g) = |g|^(r-2) g``. Every ratio it
returns is attained by the returned witness, so it is a certified lower
bound for the grid operator.

Starting points are tried in a fixed order: plane waves at the grid maximum
of |m| (exact eigenfunctions, so they already certify ``max |m|`` for every
p), then caller-supplied functions, then seeded random band-limited ones.
"""
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from core.constants import Exponent
from core.errors import UsageError
from fourier.grid import GridFunction, GridSpec, lp_norm
from fourier.multiplier import apply_symbol_values, symbol_on_grid
from fourier.symbols import MultiplierSymbol
from lab.defaults import (
    OPNORM_DAMPING,
    OPNORM_ITERATIONS_PER_RESTART,
    OPNORM_RESTARTS,
    OPNORM_STAGNATION_TOL,
)
from lab.seeding import rng_stream, stream_tag

logger = logging.getLogger(__name__)

_RESTART_TAG = stream_tag("fourier", "opnorm", "restart")
MIN_STEP = 1e-6


@dataclass
class OpNormResult:
    ratio: float
    witness: Optional[GridFunction]
    iterations: int
    restarts: int
    stagnated: bool


def duality_map(f: GridFunction, r: float) -> GridFunction:
    """Pointwise ``|f|^(r-2) f`` with the l^2 modulus over components; 0 where f = 0."""
    modulus = np.sqrt(np.sum(np.abs(f.values) ** 2, axis=-1, keepdims=True))
    live = modulus > 0
    scale = np.where(live, np.where(live, modulus, 1.0) ** (r - 2.0), 0.0)
    return f.like(scale * f.values)


def _normalized(f: GridFunction, p: float) -> Optional[GridFunction]:
    size = lp_norm(f, p)
    if not size > 0 or not np.isfinite(size):
        return None
    return f.like(f.values / size)


def plane_wave_starts(template: GridFunction, symbol_values: np.ndarray, count: int = 1):
    magnitude = np.abs(symbol_values).copy()
    magnitude[(0,) * template.d] = 0
    points = template.points()
    frequencies = template.frequencies()
    for flat in np.argsort(-magnitude, axis=None, kind="stable")[:count]:
        xi = frequencies[np.unravel_index(flat, magnitude.shape)]
        values = np.zeros(template.values.shape, dtype=complex)
        values[..., 0] = np.exp(1j * points @ xi)
        yield template.like(values)


def hilbert_seed_functions(grid: GridFunction, p: float, gammas=(0.8, 0.9, 0.95)):
    """Near-extremal functions for the periodic Hilbert transform.

    With ``theta = pi x / L`` sampled at half-shifted points,
    ``|cot(theta/2)|^g`` has conjugate ratio close to ``tan(g pi / 2)`` and
    ``sign(theta)|cot(theta/2)|^g`` one close to ``cot(g pi / 2)``; ``g p < 1``
    keeps both in L^p.
    """
    if grid.d != 1:
        raise UsageError("Hilbert seeds live on one-dimensional grids")
    p = Exponent.of(p).p
    theta = np.pi * (grid.points()[..., 0] + grid.spacing / 2) / grid.L
    cot = np.abs(1.0 / np.tan(theta / 2))
    seeds = []
    for gamma in gammas:
        power = cot ** (gamma / p)
        values = power if p <= 2 else np.sign(theta) * power
        seed = np.zeros(grid.values.shape, dtype=complex)
        seed[..., 0] = values
        seeds.append(grid.like(seed))
    return seeds


def _starts(template, symbol_values, seeds, restarts, seed) -> Iterator[GridFunction]:
    yield from plane_wave_starts(template, symbol_values)
    yield from seeds
    for restart in range(restarts):
        rng = rng_stream(seed, _RESTART_TAG, block=restart)
        yield GridFunction.band_limited_random(
            template.d, template.n, template.L, rng, k=template.k
        )


def opnorm_lower_bound(
    m: MultiplierSymbol,
    p: float,
    grid: Optional[GridSpec] = None,
    budget: int = OPNORM_RESTARTS * OPNORM_ITERATIONS_PER_RESTART,
    seed: int = 0,
    seeds: Sequence[GridFunction] = (),
    restarts: int = OPNORM_RESTARTS,
    iterations_per_restart: int = OPNORM_ITERATIONS_PER_RESTART,
    damping: float = OPNORM_DAMPING,
) -> OpNormResult:
    """Best ratio found within ``budget`` ratio evaluations.

    The sequence of starting points and iterates depends only on the seed,
    so the result is nondecreasing in ``budget``.
    """
    p = Exponent.of(p).p
    q = p / (p - 1.0)
    if budget < 1:
        raise UsageError(f"budget must be at least 1, got {budget}")
    grid = grid or GridSpec(d=m.dim or 1)
    template = grid.empty()
    values = symbol_on_grid(template, m)
    adjoint = np.conj(values)

    def ratio_of(f):
        return lp_norm(apply_symbol_values(f, values), p) / lp_norm(f, p)

    best, witness = 0.0, None
    used, started, stagnated_runs = 0, 0, 0
    for start in _starts(template, values, seeds, restarts, seed):
        if used >= budget:
            break
        f = _normalized(start, p)
        if f is None:
            continue
        started += 1
        current = ratio_of(f)
        used += 1
        if current > best:
            best, witness = current, f
        step = 1.0
        for _ in range(iterations_per_restart - 1):
            if used >= budget:
                break
            image = apply_symbol_values(f, values)
            pulled = apply_symbol_values(duality_map(image, p), adjoint)
            proposal = _normalized(duality_map(pulled, q), p)
            if proposal is None:
                break
            if step < 1.0:
                proposal = _normalized(f.like(f.values + step * (proposal.values - f.values)), p)
                if proposal is None:
                    break
            value = ratio_of(proposal)
            used += 1
            if value > best:
                best, witness = value, proposal
            if value > current * (1.0 + OPNORM_STAGNATION_TOL):
                f, current, step = proposal, value, 1.0
            else:
                step *= damping
                if step < MIN_STEP:
                    stagnated_runs += 1
                    break
        logger.debug("restart %d: ratio %.8f after %d evaluations", started, current, used)

    stagnated = started > 0 and stagnated_runs == started
    logger.info("%s at p=%g: best ratio %.8f (%d evaluations)", m.name, p, best, used)
    return OpNormResult(best, witness, used, started, stagnated)
