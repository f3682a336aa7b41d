import itertools
from typing import Optional

import numpy as np

from core.errors import UsageError
from core.spaces import NormedSpace, as_vector
from lab.defaults import ADVERSARIAL_EXACT_PATH_CAP, CHUNK_SIZE
from lab.seeding import iter_chunks, rng_stream, stream_tag
from mart.ensemble import DiscretePathEnsemble
from mart.rules import CoefficientRule

NOISES = ("rademacher", "gaussian", "uniform")


def _draw_noise(rng: np.random.Generator, noise: str, shape) -> np.ndarray:
    if noise == "rademacher":
        return 2.0 * rng.integers(0, 2, size=shape) - 1.0
    if noise == "gaussian":
        return rng.standard_normal(shape)
    if noise == "uniform":
        # unit variance
        return rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), size=shape)
    raise UsageError(f"Unknown noise {noise!r}, expected one of {NOISES}")


def _start(space: NormedSpace, start) -> np.ndarray:
    if start is None:
        return np.zeros(space.dim)
    return as_vector(space, start)


def build_increments(
    space: NormedSpace, history: np.ndarray, coeff_rule: CoefficientRule, start=None
) -> np.ndarray:
    """``df_n = noise_n * phi_n(noise_1..noise_{n-1})`` for every row of ``history``."""
    n_paths, depth = history.shape
    increments = np.empty((n_paths, depth + 1, space.dim))
    increments[:, 0] = _start(space, start)
    for n in range(1, depth + 1):
        coefficient = np.asarray(coeff_rule(n, history[:, : n - 1]), dtype=float)
        if coefficient.shape != (n_paths, space.dim):
            raise UsageError(
                f"Coefficient rule returned shape {coefficient.shape} at step {n}, "
                f"expected {(n_paths, space.dim)}"
            )
        increments[:, n] = history[:, n - 1 : n] * coefficient
    return increments


def gen_random_walk(
    space: NormedSpace,
    depth: int,
    n_paths: int,
    coeff_rule: CoefficientRule,
    seed: int,
    noise: str = "rademacher",
    start=None,
    chunk_size: int = CHUNK_SIZE,
) -> DiscretePathEnsemble:
    if depth < 1:
        raise UsageError(f"depth must be at least 1, got {depth}")
    if n_paths < 1:
        raise UsageError(f"n_paths must be at least 1, got {n_paths}")
    tag = stream_tag("mart", noise)
    history = np.empty((n_paths, depth))
    for block, lo, hi in iter_chunks(n_paths, chunk_size):
        history[lo:hi] = _draw_noise(rng_stream(seed, tag, block), noise, (hi - lo, depth))
    increments = build_increments(space, history, coeff_rule, start)
    return DiscretePathEnsemble(space, increments, seed=seed, history=history)


def gen_paley_walsh(
    space: NormedSpace,
    depth: int,
    n_paths: int,
    coeff_rule: CoefficientRule,
    seed: int,
    start=None,
    chunk_size: int = CHUNK_SIZE,
) -> DiscretePathEnsemble:
    """Dyadic martingale ``df_n = eps_n * phi_n(eps_1..eps_{n-1})`` with i.i.d. signs."""
    return gen_random_walk(
        space, depth, n_paths, coeff_rule, seed, "rademacher", start, chunk_size
    )


def sign_patterns(depth: int) -> np.ndarray:
    return np.array(list(itertools.product((-1.0, 1.0), repeat=depth))).reshape(-1, depth)


def enumerate_paley_walsh(
    space: NormedSpace,
    depth: int,
    coeff_rule: CoefficientRule,
    start=None,
    max_paths: Optional[int] = ADVERSARIAL_EXACT_PATH_CAP,
) -> DiscretePathEnsemble:
    """All ``2 ** depth`` sign patterns once each; sample moments are exact expectations."""
    if depth < 1:
        raise UsageError(f"depth must be at least 1, got {depth}")
    if max_paths is not None and 2**depth > max_paths:
        raise UsageError(f"2^{depth} sign patterns exceed the cap of {max_paths} paths")
    history = sign_patterns(depth)
    increments = build_increments(space, history, coeff_rule, start)
    return DiscretePathEnsemble(space, increments, history=history, exact=True)
