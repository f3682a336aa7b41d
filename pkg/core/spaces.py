from dataclasses import dataclass
from typing import Union

import numpy as np

from core.errors import UsageError

# Coordinates in R^dim; leading axes are batch axes throughout the lab
Vector = np.ndarray


@dataclass(frozen=True)
class Lq:
    q: float = 2.0

    def __post_init__(self):
        if not np.isfinite(self.q) or self.q < 1.0:
            raise UsageError(f"Lq norm needs finite q >= 1, got {self.q}")


@dataclass(frozen=True)
class DirectSumP:
    """Norm of ``inner (+) R``: ``(|x|_inner^p + |r|^p)^(1/p)``."""

    inner: "NormedSpace"
    p: float

    def __post_init__(self):
        if not np.isfinite(self.p) or self.p <= 1.0:
            raise UsageError(f"Direct sum exponent must lie in (1, inf), got {self.p}")


@dataclass(frozen=True)
class NormedSpace:
    dim: int
    norm: Union[Lq, DirectSumP] = Lq(2.0)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise UsageError(f"Space dimension must be a positive integer, got {self.dim}")
        if isinstance(self.norm, DirectSumP) and self.dim != self.norm.inner.dim + 1:
            raise UsageError(
                f"Direct sum over a {self.norm.inner.dim}-dimensional space "
                f"has dimension {self.norm.inner.dim + 1}, got {self.dim}"
            )

    @classmethod
    def lq(cls, dim: int, q: float = 2.0) -> "NormedSpace":
        return cls(dim, Lq(q))

    @classmethod
    def scalar(cls) -> "NormedSpace":
        return cls(1, Lq(2.0))

    @classmethod
    def direct_sum(cls, inner: "NormedSpace", p: float) -> "NormedSpace":
        return cls(inner.dim + 1, DirectSumP(inner, p))

    def describe(self) -> str:
        if isinstance(self.norm, Lq):
            return f"l{self.norm.q:g}({self.dim})"
        return f"({self.norm.inner.describe()} (+)_{self.norm.p:g} R)"


def as_vector(space: NormedSpace, coords) -> Vector:
    v = np.asarray(coords, dtype=float)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.shape[-1] != space.dim:
        raise UsageError(f"Expected {space.dim} coordinates, got {v.shape[-1]}")
    if not np.all(np.isfinite(v)):
        raise UsageError("Vector coordinates must be finite")
    return v


def _lq_norm(v: np.ndarray, q: float) -> np.ndarray:
    a = np.abs(v)
    if q == 1.0:
        return np.sum(a, axis=-1)
    if q == 2.0:
        return np.sqrt(np.sum(a * a, axis=-1))
    scale = np.max(a, axis=-1, keepdims=True)
    safe = np.where(scale > 0, scale, 1)
    return scale[..., 0] * np.sum((a / safe) ** q, axis=-1) ** (1.0 / q)


def norm(space: NormedSpace, v) -> np.ndarray:
    """Norm of ``v`` in ``space``, batched over leading axes.

    Extended-precision inputs (``np.longdouble``) keep their precision.
    """
    v = np.asarray(v)
    if v.shape[-1:] != (space.dim,):
        raise UsageError(f"Expected {space.dim} coordinates, got shape {v.shape}")
    if isinstance(space.norm, Lq):
        return _lq_norm(v, space.norm.q)
    inner = norm(space.norm.inner, v[..., :-1])
    r = np.abs(v[..., -1])
    p = space.norm.p
    return (inner**p + r**p) ** (1.0 / p)


def pairing(v, w) -> np.ndarray:
    v = np.asarray(v)
    w = np.asarray(w)
    if v.shape[-1] != w.shape[-1]:
        raise UsageError(f"Cannot pair vectors of length {v.shape[-1]} and {w.shape[-1]}")
    return np.sum(v * w, axis=-1)


def normalize(space: NormedSpace, v) -> Vector:
    v = np.asarray(v, dtype=float)
    size = norm(space, v)
    if np.any(size == 0):
        raise UsageError("Cannot normalize the zero vector")
    return v / np.expand_dims(size, -1)


def is_hilbert(space: NormedSpace) -> bool:
    if space.dim == 1:
        return True
    if isinstance(space.norm, Lq):
        return space.norm.q == 2.0
    return space.norm.p == 2.0 and is_hilbert(space.norm.inner)
