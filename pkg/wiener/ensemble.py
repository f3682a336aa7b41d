from dataclasses import dataclass, field

import numpy as np

from core.errors import UsageError
from lab.defaults import CHUNK_SIZE, WIENER_TIME_STEPS
from lab.seeding import iter_chunks, rng_stream, stream_tag

_WIENER_TAG = stream_tag("wiener", "increments")


@dataclass
class WienerEnsemble:
    """``h`` independent Brownian coordinates on ``[0, T]`` sampled every ``dt``.

    ``increments`` has shape ``(n_paths, steps, h)``; ``path`` prepends W(0) = 0.
    """

    T: float
    increments: np.ndarray
    seed: int
    path: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.increments = np.asarray(self.increments, dtype=float)
        if self.increments.ndim != 3:
            raise UsageError(f"Increments must have shape (n_paths, steps, h), got {self.increments.shape}")
        zero = np.zeros((self.n_paths, 1, self.h))
        self.path = np.concatenate([zero, np.cumsum(self.increments, axis=1)], axis=1)

    @property
    def n_paths(self) -> int:
        return self.increments.shape[0]

    @property
    def steps(self) -> int:
        return self.increments.shape[1]

    @property
    def h(self) -> int:
        return self.increments.shape[2]

    @property
    def dt(self) -> float:
        return self.T / self.steps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.steps + 1)

    def grid_index(self, t) -> np.ndarray:
        """Index of the time-grid point nearest ``t``."""
        return np.rint(np.asarray(t, dtype=float) / self.dt).astype(int)

    @classmethod
    def generate(
        cls,
        n_paths: int,
        T: float = 1.0,
        steps: int = WIENER_TIME_STEPS,
        h: int = 1,
        seed: int = 0,
        chunk_size: int = CHUNK_SIZE,
    ) -> "WienerEnsemble":
        if n_paths < 1 or steps < 1 or h < 1 or not T > 0:
            raise UsageError("Need n_paths, steps, h >= 1 and T > 0")
        dt = T / steps
        increments = np.empty((n_paths, steps, h))
        for block, lo, hi in iter_chunks(n_paths, chunk_size):
            rng = rng_stream(seed, _WIENER_TAG, block)
            increments[lo:hi] = rng.normal(0.0, np.sqrt(dt), size=(hi - lo, steps, h))
        return cls(T, increments, seed)
