"""Periodic grids standing in for L^p(R^d).

A GridFunction samples a C^k-valued function on ``[-L, L)^d`` with ``n`` points
per axis. Transforms use the unitary DFT, so the grid L^2 norm (with cell
volume ``(2L/n)^d``) is preserved exactly by ``forward``.
"""
import json
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
import scipy.fft

from core.errors import UsageError
from lab.defaults import GRID_HALF_PERIOD, GRID_POINTS

HEADER = struct.Struct("<qqdq")
# JSON is meant for small grids only
JSON_MAX_POINTS = 4096


@dataclass
class GridFunction:
    d: int
    n: int
    L: float
    values: np.ndarray

    def __post_init__(self):
        if self.d < 1 or self.n < 2 or self.n & (self.n - 1):
            raise UsageError(f"Grids need d >= 1 and n a power of two, got d={self.d}, n={self.n}")
        if not self.L > 0:
            raise UsageError(f"Half-period must be positive, got {self.L}")
        values = np.asarray(self.values, dtype=complex)
        if values.shape == (self.n,) * self.d:
            values = values[..., None]
        if values.ndim != self.d + 1 or values.shape[: self.d] != (self.n,) * self.d:
            raise UsageError(
                f"Grid values must have shape {(self.n,) * self.d + ('k',)}, got {values.shape}"
            )
        self.values = values

    @property
    def k(self) -> int:
        return self.values.shape[-1]

    @property
    def spacing(self) -> float:
        return 2 * self.L / self.n

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.d

    @property
    def axes(self):
        return tuple(range(self.d))

    @classmethod
    def default(cls, d: int, k: int = 1, n: Optional[int] = None, L: float = GRID_HALF_PERIOD):
        n = n or GRID_POINTS.get(d, 64)
        return cls(d, n, L, np.zeros((n,) * d + (k,), dtype=complex))

    def like(self, values) -> "GridFunction":
        return GridFunction(self.d, self.n, self.L, values)

    def points(self) -> np.ndarray:
        axis = -self.L + self.spacing * np.arange(self.n)
        return np.stack(np.meshgrid(*([axis] * self.d), indexing="ij"), axis=-1)

    def frequencies(self) -> np.ndarray:
        """Angular frequencies ``pi k / L`` in FFT order, shape ``(n,)*d + (d,)``."""
        axis = 2 * np.pi * scipy.fft.fftfreq(self.n, d=self.spacing)
        return np.stack(np.meshgrid(*([axis] * self.d), indexing="ij"), axis=-1)

    def forward(self) -> np.ndarray:
        return scipy.fft.fftn(self.values, axes=self.axes, norm="ortho")

    @classmethod
    def from_spectrum(cls, d: int, n: int, L: float, spectrum) -> "GridFunction":
        return cls(d, n, L, scipy.fft.ifftn(spectrum, axes=tuple(range(d)), norm="ortho"))

    @classmethod
    def from_callable(cls, d: int, n: int, L: float, func: Callable) -> "GridFunction":
        axis = -L + (2 * L / n) * np.arange(n)
        points = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1)
        return cls(d, n, L, np.asarray(func(points)))

    @classmethod
    def band_limited_random(
        cls,
        d: int,
        n: int,
        L: float,
        rng: np.random.Generator,
        k: int = 1,
        bandwidth: Optional[int] = None,
        width: Optional[float] = None,
        mean_zero: bool = True,
        real: bool = False,
    ) -> "GridFunction":
        """Random low-frequency trigonometric polynomial under a Gaussian window.

        The window keeps the effective support well inside the domain so the
        periodic surrogate does not feel the wrap-around.
        """
        bandwidth = bandwidth or max(2, n // 16)
        width = width or L / 4
        shape = (n,) * d + (k,)
        spectrum = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        index = np.abs(np.stack(np.meshgrid(*[np.fft.fftfreq(n, 1 / n)] * d, indexing="ij")))
        spectrum[np.max(index, axis=0) > bandwidth] = 0
        grid = cls.from_spectrum(d, n, L, spectrum)
        window = np.exp(-np.sum(grid.points() ** 2, axis=-1) / (2 * width**2))
        values = grid.values * window[..., None]
        if real:
            values = values.real.astype(complex)
        grid = grid.like(values)
        if mean_zero:
            grid = grid.without_mean()
        return grid

    def without_mean(self) -> "GridFunction":
        spectrum = self.forward()
        spectrum[(0,) * self.d] = 0
        return GridFunction.from_spectrum(self.d, self.n, self.L, spectrum)

    def index_of(self, x) -> tuple:
        """Nearest grid index to ``x``; points outside ``[-L, L)^d`` wrap periodically."""
        x = np.asarray(x, dtype=float).reshape(self.d)
        return tuple(int(i) for i in np.mod(np.rint((x + self.L) / self.spacing), self.n).astype(int))

    def snap(self, x) -> np.ndarray:
        """Grid point nearest to ``x`` inside the fundamental domain."""
        return -self.L + self.spacing * np.asarray(self.index_of(x), dtype=float)

    def at(self, x) -> np.ndarray:
        return self.values[self.index_of(x)]

    def to_bytes(self) -> bytes:
        """Header ``d, n, L, k`` (little-endian 64-bit) then row-major complex128 pairs."""
        body = np.ascontiguousarray(self.values, dtype="<c16").tobytes()
        return HEADER.pack(self.d, self.n, self.L, self.k) + body

    @classmethod
    def from_bytes(cls, data: bytes) -> "GridFunction":
        if len(data) < HEADER.size:
            raise UsageError("Truncated grid header")
        d, n, L, k = HEADER.unpack_from(data)
        values = np.frombuffer(data, dtype="<c16", offset=HEADER.size)
        if values.size != n**d * k:
            raise UsageError(f"Expected {n ** d * k} grid values, found {values.size}")
        return cls(d, n, L, values.reshape((n,) * d + (k,)).astype(complex))

    def to_json(self) -> str:
        if self.values.size > JSON_MAX_POINTS:
            raise UsageError(f"JSON output is limited to {JSON_MAX_POINTS} values, use the binary layout")
        return json.dumps(
            {
                "d": self.d,
                "n": self.n,
                "L": self.L,
                "k": self.k,
                "real": self.values.real.tolist(),
                "imag": self.values.imag.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "GridFunction":
        data = json.loads(text)
        values = np.asarray(data["real"]) + 1j * np.asarray(data["imag"])
        return cls(int(data["d"]), int(data["n"]), float(data["L"]), values)

    def save(self, path: Union[str, Path]):
        path = Path(path)
        if path.suffix == ".json":
            path.write_text(self.to_json())
        else:
            path.write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "GridFunction":
        path = Path(path)
        if path.suffix == ".json":
            return cls.from_json(path.read_text())
        return cls.from_bytes(path.read_bytes())


def lp_norm(f: GridFunction, p: float, q: float = 2.0) -> float:
    """``(sum_j |f(x_j)|_q^p (2L/n)^d)^(1/p)``; components are aggregated in l^q."""
    if not p > 1:
        raise UsageError(f"p must exceed 1, got {p}")
    pointwise = np.sum(np.abs(f.values) ** q, axis=-1) ** (1.0 / q)
    return float((np.sum(pointwise**p) * f.cell_volume) ** (1.0 / p))


@dataclass(frozen=True)
class GridSpec:
    d: int = 1
    n: Optional[int] = None
    L: float = GRID_HALF_PERIOD
    k: int = 1

    @property
    def points_per_axis(self) -> int:
        return self.n or GRID_POINTS.get(self.d, 64)

    def empty(self) -> GridFunction:
        return GridFunction.default(self.d, self.k, self.points_per_axis, self.L)
