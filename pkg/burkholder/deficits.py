"""Finite-difference probes of zigzag concavity and gradient growth.

All second differences are taken in long double so that the h^-2 scaling does
not amplify double-precision rounding above the acceptance tolerance.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from burkholder.params import BurkholderParams
from burkholder.wang import BivariateFunction, v_from_u, wang_function
from core.errors import UsageError
from core.spaces import NormedSpace, norm
from lab.defaults import FD_STEP, KINK_MIN_SCALE, KINK_RATIO
from lab.seeding import rng_stream, stream_tag

_PROBE_TAG = stream_tag("burkholder", "probes")
_EXT = np.longdouble


def _second_difference(func, h) -> np.ndarray:
    h = _EXT(h)
    return (func(h) - 2 * func(_EXT(0)) + func(-h)) / (h * h)


def zigzag_deficit(u: BivariateFunction, x, y, z, eps, h: float = FD_STEP) -> np.ndarray:
    """Central second difference of ``t -> u(x + t z, y + eps t z)`` at 0."""
    if h <= 0:
        raise UsageError(f"Step must be positive, got {h}")
    eps = np.asarray(eps, dtype=float)
    if np.any(np.abs(eps) > 1):
        raise UsageError("Zigzag directions need |eps| <= 1")
    x, y, z = (np.asarray(a, dtype=_EXT) for a in (x, y, z))
    ez = np.expand_dims(eps.astype(_EXT), -1) * z
    return _second_difference(lambda t: u(x + t * z, y + t * ez), h)


def orthogonal_deficit(
    u: BivariateFunction, x, y, z1, z2, h: float = FD_STEP, extrapolate: bool = True
) -> np.ndarray:
    """Second difference at t = 0 of ``u(x + t z1, y + t z2) + u(x + t z2, y - t z1)``.

    The sum is concave at t = 0 only, not along the whole line, so by default
    the O(h^2) truncation term is removed by Richardson extrapolation
    between steps h and h/2.
    """
    if h <= 0:
        raise UsageError(f"Step must be positive, got {h}")
    x, y, z1, z2 = (np.asarray(a, dtype=_EXT) for a in (x, y, z1, z2))

    def line(t):
        return u(x + t * z1, y + t * z2) + u(x + t * z2, y - t * z1)

    coarse = _second_difference(line, h)
    if not extrapolate:
        return coarse
    fine = _second_difference(line, h / 2)
    return (4 * fine - coarse) / 3


def is_admissible_probe(space: NormedSpace, x, y) -> np.ndarray:
    """False near the nonsmooth locus (x = 0, y = 0) of norm-based functions."""
    nx = norm(space, np.asarray(x, dtype=float))
    ny = norm(space, np.asarray(y, dtype=float))
    total = nx + ny
    return (np.minimum(nx, ny) >= KINK_RATIO * total) & (total >= KINK_MIN_SCALE)


def _random_directions(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    v = rng.standard_normal((n, dim))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v


def sample_admissible_probes(
    space: NormedSpace, n: int, seed: int, radius: float = 1.0, n_directions: int = 2
) -> Tuple[np.ndarray, ...]:
    """Draw ``n`` admissible pairs (x, y) with |x|, |y| <= radius, plus
    ``n_directions`` unit direction arrays of shape (n, dim)."""
    rng = rng_stream(seed, _PROBE_TAG)
    xs, ys = [], []
    found = 0
    while found < n:
        batch = max(2 * (n - found), 64)
        x = _random_directions(rng, batch, space.dim)
        y = _random_directions(rng, batch, space.dim)
        x *= (radius * rng.random(batch) / norm(space, x))[:, None]
        y *= (radius * rng.random(batch) / norm(space, y))[:, None]
        keep = is_admissible_probe(space, x, y)
        xs.append(x[keep])
        ys.append(y[keep])
        found += int(np.sum(keep))
    x = np.concatenate(xs)[:n]
    y = np.concatenate(ys)[:n]
    directions = tuple(_random_directions(rng, n, space.dim) for _ in range(n_directions))
    return (x, y) + directions


def fd_gradient(u: BivariateFunction, x, y, h: float = FD_STEP) -> Tuple[np.ndarray, np.ndarray]:
    """Central-difference gradients of ``u`` in x and in y, batched."""
    x = np.asarray(x, dtype=_EXT)
    y = np.asarray(y, dtype=_EXT)
    dim = x.shape[-1]
    gx = np.empty(x.shape, dtype=_EXT)
    gy = np.empty(y.shape, dtype=_EXT)
    step = _EXT(h)
    for i in range(dim):
        e = np.zeros(dim, dtype=_EXT)
        e[i] = step
        gx[..., i] = (u(x + e, y) - u(x - e, y)) / (2 * step)
        gy[..., i] = (u(x, y + e) - u(x, y - e)) / (2 * step)
    return gx.astype(float), gy.astype(float)


def _gradient_ratios(params: BurkholderParams, x, y) -> np.ndarray:
    u = wang_function(params)

    def v(a, b):
        return v_from_u(u, a, b)

    gx, gy = fd_gradient(v, x, y)
    p = params.p.p
    growth = norm(params.space, x) ** (p - 1) + norm(params.space, y) ** (p - 1)
    size = np.maximum(np.linalg.norm(gx, axis=-1), np.linalg.norm(gy, axis=-1))
    return size / growth


def gradient_bound_constant(params: BurkholderParams, n: int, seed: int) -> float:
    """Fit C in ``|dV| <= C(|x|^(p-1) + |y|^(p-1))`` on the unit ball."""
    x, y = sample_admissible_probes(params.space, n, seed, radius=1.0, n_directions=0)
    # V(x, y) = U((x-y)/2, (x+y)/2) is smooth where both arguments stay away from 0
    keep = is_admissible_probe(params.space, (x - y) / 2, (x + y) / 2)
    return float(np.max(_gradient_ratios(params, x[keep], y[keep])))


@dataclass(frozen=True)
class GradientBoundReport:
    constant: float
    max_ratio: float
    scale: float
    margin: float

    @property
    def passed(self) -> bool:
        return self.max_ratio <= self.constant * self.margin


def check_gradient_bound(
    params: BurkholderParams,
    constant: float,
    n: int,
    seed: int,
    scale: float = 10.0,
    margin: float = 1.1,
) -> GradientBoundReport:
    x, y = sample_admissible_probes(params.space, n, seed, radius=scale, n_directions=0)
    keep = is_admissible_probe(params.space, (x - y) / 2, (x + y) / 2)
    ratio = _gradient_ratios(params, x[keep], y[keep])
    return GradientBoundReport(constant, float(np.max(ratio)), scale, margin)
