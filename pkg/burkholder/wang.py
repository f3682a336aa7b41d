import functools
from typing import Callable

import numpy as np

from burkholder.params import BurkholderParams
from core.errors import UnsupportedSpaceError, UsageError
from core.spaces import norm

BivariateFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _norms(params: BurkholderParams, x, y):
    x = np.asarray(x)
    y = np.asarray(y)
    dtype = np.result_type(x, y, np.float64)
    return norm(params.space, x.astype(dtype)), norm(params.space, y.astype(dtype))


def wang_u(params: BurkholderParams, x, y) -> np.ndarray:
    """Wang's closed-form Burkholder function of a Hilbert space.

    ``U(x, y) = p (1 - 1/p*)^(p-1) (|y| - (p*-1)|x|) (|x| + |y|)^(p-1)``.
    Batched over leading axes; long double inputs are evaluated in long double.
    """
    if not params.is_hilbert:
        raise UnsupportedSpaceError(
            f"Wang's function needs a Hilbert norm, got {params.space.describe()}"
        )
    nx, ny = _norms(params, x, y)
    p = params.p.p
    pstar = params.p.pstar
    constant = p * (1.0 - 1.0 / pstar) ** (p - 1.0)
    return constant * (ny - (pstar - 1.0) * nx) * (nx + ny) ** (p - 1.0)


def wang_function(params: BurkholderParams) -> BivariateFunction:
    return functools.partial(wang_u, params)


def v_from_u(u: BivariateFunction, x, y) -> np.ndarray:
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape[-1] != y.shape[-1]:
        raise UsageError(f"Dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    return u((x - y) / 2, (x + y) / 2)


def burkholder_v(params: BurkholderParams, x, y) -> np.ndarray:
    return v_from_u(wang_function(params), x, y)


def trivial_value(params: BurkholderParams, x, y) -> np.ndarray:
    """Value of the constant pair: ``|y|^p - beta^p |x|^p``."""
    nx, ny = _norms(params, x, y)
    p = params.p.p
    return ny**p - params.beta**p * nx**p


def check_majorization(params: BurkholderParams, x, y) -> np.ndarray:
    """Slack ``U(x, y) - (|y|^p - beta^p |x|^p)``; nonnegative for admissible U."""
    return wang_u(params, x, y) - trivial_value(params, x, y)


def diagonal_value(params: BurkholderParams, x, eps) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    eps = np.asarray(eps, dtype=float)
    return wang_u(params, x, np.expand_dims(eps, -1) * x)
