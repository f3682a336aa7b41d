from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core.errors import UsageError
from jump.levy import LevyMeasureAtomic
from lab.seeding import rng_stream, stream_tag

_JUMP_TAG = stream_tag("jump", "compound-poisson")


@dataclass
class JumpPath:
    """Signal times ``S_1 < S_2 < ...`` in ``(s, u]`` with the atoms jumped to."""

    signal_times: np.ndarray
    jumps: np.ndarray
    window: Tuple[float, float]
    atom_index: Optional[np.ndarray] = None

    def __post_init__(self):
        s, u = self.window
        self.signal_times = np.asarray(self.signal_times, dtype=float).reshape(-1)
        self.jumps = np.asarray(self.jumps, dtype=float)
        if self.jumps.ndim == 1:
            self.jumps = self.jumps[:, None]
        if self.jumps.shape[0] != self.signal_times.shape[0]:
            raise UsageError("Need one jump per signal time")
        if np.any(np.diff(self.signal_times) <= 0):
            raise UsageError("Signal times must be strictly increasing")
        if self.signal_times.size and (self.signal_times[0] <= s or self.signal_times[-1] > u):
            raise UsageError(f"Signal times must lie in ({s}, {u}]")

    @property
    def count(self) -> int:
        return self.signal_times.shape[0]

    def position(self, t) -> np.ndarray:
        """``X_{s,t}``: sum of the jumps at signal times <= t."""
        cumulative = np.vstack([np.zeros((1, self.jumps.shape[1])), np.cumsum(self.jumps, axis=0)])
        return cumulative[np.searchsorted(self.signal_times, t, side="right")]


@dataclass
class StepPath:
    """Path sampled at ``times`` with right values and left limits, shape ``(K, k)``.

    Between samples the path is read as constant.
    """

    times: np.ndarray
    values: np.ndarray
    left: Optional[np.ndarray] = None

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim == 1:
            self.values = self.values[:, None]
        if self.left is None:
            self.left = self.values
        else:
            self.left = np.asarray(self.left, dtype=float).reshape(self.values.shape)
        if np.any(np.diff(self.times) < 0):
            raise UsageError("Sample times must be nondecreasing")

    def at(self, t) -> np.ndarray:
        index = np.searchsorted(self.times, t, side="right") - 1
        return self.values[np.clip(index, 0, len(self.times) - 1)]

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]


def draw_jumps(
    rng: np.random.Generator, nu: LevyMeasureAtomic, s: float, u: float
) -> JumpPath:
    rate = nu.total_mass
    times = []
    t = s + rng.exponential(1.0 / rate)
    while t <= u:
        times.append(t)
        t += rng.exponential(1.0 / rate)
    index = rng.choice(nu.n_atoms, size=len(times), p=nu.weights / rate)
    return JumpPath(np.array(times), nu.atoms[index], (s, u), index)


def simulate_jumps(nu: LevyMeasureAtomic, s: float, u: float, seed: int, block: int = 0) -> JumpPath:
    """Compound Poisson path on ``(s, u]``: Exponential(|nu|) gaps, marks drawn from nu/|nu|."""
    if not s < u:
        raise UsageError(f"Need s < u, got s={s}, u={u}")
    return draw_jumps(rng_stream(seed, _JUMP_TAG, block), nu, s, u)
