"""Parabolic martingales driven by a compound Poisson process.

For boundary data f on a periodic grid and a lattice Levy measure nu,

    G_t = P_{t,u} f(x + X_{s,t}),
    F_t = sum_{S_i <= t} [P_{S_i,u} f(x + X_{s,S_i}) - P_{S_i,u} f(x + X_{s,S_i-})] phi(Z_i)
          - int_s^t sum_z [P_{v,u} f(x + X_{s,v-} + z) - P_{v,u} f(x + X_{s,v-})] phi(z) nu(z) dv.

The semigroup is applied spectrally, P_tau = F^-1 e^{tau Psi} F. Atoms are
lattice vectors of the grid, so the grid semigroup is the exact transition
semigroup of the walk and G is an exact martingale. The compensator integral
uses the composite trapezoid rule on the time grid refined by the jump times.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Union

import numpy as np
import scipy.fft

from core.errors import ContractViolation, UsageError
from fourier.grid import GridFunction
from jump.levy import LevyMeasureAtomic
from jump.paths import JumpPath, StepPath, draw_jumps
from lab.defaults import CHUNK_SIZE, TIME_DIVISIONS
from lab.seeding import iter_chunks, rng_stream, stream_tag

logger = logging.getLogger(__name__)

_PARABOLIC_TAG = stream_tag("jump", "parabolic")
LATTICE_TOLERANCE = 1e-9
REPORT_POINTS = 16
KEEP_PATHS_LIMIT = 1000

Modulator = Union[float, np.ndarray, Callable[[np.ndarray], np.ndarray]]


class ParabolicSemigroup:
    def __init__(self, f: GridFunction, nu: LevyMeasureAtomic):
        if nu.dim != f.d:
            raise UsageError(f"Levy measure lives in R^{nu.dim}, grid in R^{f.d}")
        scale = max(1.0, float(np.max(np.abs(f.values))))
        if np.max(np.abs(f.values.imag)) > 1e-12 * scale:
            raise UsageError("Boundary data must be real-valued")
        offsets = nu.atoms / f.spacing
        if np.any(np.abs(offsets - np.rint(offsets)) > LATTICE_TOLERANCE):
            raise UsageError(f"Levy atoms must be multiples of the grid spacing {f.spacing}")
        self.f = f
        self.nu = nu
        self.offsets = np.rint(offsets).astype(np.int64)
        self.spectrum = f.forward().reshape(-1, f.k)
        self.psi = nu.psi(f.frequencies()).reshape(-1)
        axis = np.arange(f.n)
        self.wavenumbers = np.stack(np.meshgrid(*[axis] * f.d, indexing="ij"), axis=-1).reshape(-1, f.d)

    def on_grid(self, tau: float) -> np.ndarray:
        """``P_tau f`` on the whole grid; ``tau = 0`` returns the data itself."""
        if tau < 0:
            raise UsageError(f"Semigroup time must be nonnegative, got {tau}")
        if tau == 0:
            return self.f.values.real
        spectrum = (self.spectrum * np.exp(tau * self.psi)[:, None]).reshape(self.f.values.shape)
        return scipy.fft.ifftn(spectrum, axes=self.f.axes, norm="ortho").real

    def gather(self, values: np.ndarray, indices) -> np.ndarray:
        indices = np.mod(np.asarray(indices, dtype=np.int64), self.f.n)
        return values[tuple(np.moveaxis(indices, -1, 0))]

    def at_points(self, taus, indices) -> np.ndarray:
        """``P_tau f`` at lattice points, one ``tau`` per row, by direct spectral summation."""
        indices = np.mod(np.asarray(indices, dtype=np.int64), self.f.n)
        taus = np.asarray(taus, dtype=float)
        phase = np.mod(indices @ self.wavenumbers.T, self.f.n)
        kernel = np.exp(2j * np.pi * phase / self.f.n + np.outer(taus, self.psi))
        values = kernel @ self.spectrum / np.sqrt(self.psi.shape[0])
        exact = taus == 0
        if np.any(exact):
            values[exact] = self.gather(self.f.values, indices[exact])
        return values.real

    def density_terms(self, base: np.ndarray, neighbours: np.ndarray, phi: np.ndarray) -> np.ndarray:
        """``sum_i w_i phi_i (v(y + z_i) - v(y))`` from gathered values."""
        return np.einsum("mik,i->mk", neighbours - base[:, None, :], self.nu.weights * phi)

    def grid_density(self, values: np.ndarray, positions: np.ndarray, phi: np.ndarray):
        base = self.gather(values, positions)
        neighbours = self.gather(values, positions[:, None, :] + self.offsets[None])
        return base, self.density_terms(base, neighbours, phi)

    def point_density(self, taus: np.ndarray, positions: np.ndarray, phi: np.ndarray):
        m = self.offsets.shape[0]
        shifted = positions[:, None, :] + np.concatenate([np.zeros((1, self.f.d), np.int64), self.offsets])
        flat = self.at_points(np.repeat(taus, m + 1), shifted.reshape(-1, self.f.d))
        flat = flat.reshape(positions.shape[0], m + 1, -1)
        return flat[:, 0], self.density_terms(flat[:, 0], flat[:, 1:], phi)


def parabolic_extension(f: GridFunction, nu: LevyMeasureAtomic, tau: float, x) -> np.ndarray:
    """``P_tau f(x)`` at the grid point nearest ``x``; points outside the grid wrap periodically."""
    semigroup = ParabolicSemigroup(f, nu)
    return semigroup.gather(semigroup.on_grid(tau), np.array(f.index_of(x)))


def modulator_values(nu: LevyMeasureAtomic, phi: Modulator) -> np.ndarray:
    values = phi(nu.atoms) if callable(phi) else phi
    values = np.broadcast_to(np.asarray(values, dtype=float), nu.weights.shape).copy()
    if np.any(np.abs(values) > 1.0):
        raise ContractViolation("The modulator must satisfy |phi| <= 1")
    return values


@dataclass
class ParabolicPair:
    x: np.ndarray
    window: tuple
    path: JumpPath
    G: StepPath
    F: StepPath
    dG: np.ndarray
    dF: np.ndarray
    phi_jumps: np.ndarray
    start_value: np.ndarray


@dataclass
class ParabolicEnsemble:
    """G and F of every path on ``report_times``, shape ``(n_paths, len(report_times), k)``."""

    x: np.ndarray
    window: tuple
    report_times: np.ndarray
    G: np.ndarray
    F: np.ndarray
    start_value: np.ndarray
    seed: int
    pairs: List[ParabolicPair] = field(default_factory=list)

    @property
    def n_paths(self) -> int:
        return self.G.shape[0]

    @property
    def G_final(self) -> np.ndarray:
        return self.G[:, -1]

    @property
    def F_final(self) -> np.ndarray:
        return self.F[:, -1]


def _lattice_positions(path: JumpPath, offsets, origin, times) -> np.ndarray:
    steps = offsets[path.atom_index]
    cumulative = np.vstack([np.zeros((1, origin.shape[0]), np.int64), np.cumsum(steps, axis=0)])
    return origin + cumulative[np.searchsorted(path.signal_times, times, side="right")]


def _assemble(path, semigroup, phi, origin, times, G_row, c_row, x, u) -> ParabolicPair:
    grid_nodes = ~np.isin(times, path.signal_times)
    node_times = times[grid_nodes]
    G_left = G_right = G_row[grid_nodes]
    c_left = c_right = c_row[grid_nodes]
    k = G_row.shape[1]
    dG = np.zeros((path.count, k))
    jump_of_node = np.full(node_times.shape[0], -1)
    phi_jumps = phi[path.atom_index]

    if path.count:
        steps = semigroup.offsets[path.atom_index]
        cumulative = origin + np.vstack([np.zeros((1, origin.shape[0]), np.int64), np.cumsum(steps, axis=0)])
        taus = u - path.signal_times
        G_pre, c_pre = semigroup.point_density(taus, cumulative[:-1], phi)
        G_post, c_post = semigroup.point_density(taus, cumulative[1:], phi)
        dG = G_post - G_pre
        node_times = np.concatenate([node_times, path.signal_times])
        G_left = np.concatenate([G_left, G_pre])
        G_right = np.concatenate([G_right, G_post])
        c_left = np.concatenate([c_left, c_pre])
        c_right = np.concatenate([c_right, c_post])
        jump_of_node = np.concatenate([jump_of_node, np.arange(path.count)])
        order = np.argsort(node_times, kind="stable")
        node_times, G_left, G_right, c_left, c_right, jump_of_node = (
            a[order] for a in (node_times, G_left, G_right, c_left, c_right, jump_of_node)
        )

    dF = phi_jumps[:, None] * dG
    widths = np.diff(node_times)[:, None]
    compensator = np.vstack(
        [np.zeros((1, k)), np.cumsum(widths * (c_right[:-1] + c_left[1:]) / 2, axis=0)]
    )
    node_jumps = np.zeros((node_times.shape[0], k))
    is_jump = jump_of_node >= 0
    node_jumps[is_jump] = dF[jump_of_node[is_jump]]
    F_right = np.cumsum(node_jumps, axis=0) - compensator
    F_left = F_right - node_jumps

    return ParabolicPair(
        x=x,
        window=path.window,
        path=path,
        G=StepPath(node_times, G_right, G_left),
        F=StepPath(node_times, F_right, F_left),
        dG=dG,
        dF=dF,
        phi_jumps=phi_jumps,
        start_value=G_row[0],
    )


def simulate_parabolic_ensemble(
    x,
    s: float,
    u: float,
    f: GridFunction,
    phi: Modulator,
    nu: LevyMeasureAtomic,
    n_paths: int,
    seed: int,
    divisions: int = TIME_DIVISIONS,
    chunk_size: int = CHUNK_SIZE,
    keep_paths: Optional[bool] = None,
) -> ParabolicEnsemble:
    if not s < u:
        raise UsageError(f"Need s < u, got s={s}, u={u}")
    if n_paths < 1 or divisions < 1:
        raise UsageError("Need at least one path and one time division")
    keep_paths = n_paths <= KEEP_PATHS_LIMIT if keep_paths is None else keep_paths
    semigroup = ParabolicSemigroup(f, nu)
    phi = modulator_values(nu, phi)
    origin = np.array(f.index_of(x), dtype=np.int64)
    x_grid = f.snap(x)
    times = np.linspace(s, u, divisions + 1)
    stride = max(1, divisions // REPORT_POINTS)
    report = np.unique(np.append(np.arange(0, divisions + 1, stride), divisions))

    G_report = np.empty((n_paths, report.shape[0], f.k))
    F_report = np.empty_like(G_report)
    pairs = []
    for block, lo, hi in iter_chunks(n_paths, chunk_size):
        rng = rng_stream(seed, _PARABOLIC_TAG, block)
        paths = [draw_jumps(rng, nu, s, u) for _ in range(hi - lo)]
        positions = np.stack([_lattice_positions(p, semigroup.offsets, origin, times) for p in paths])
        G_grid = np.empty((hi - lo, times.shape[0], f.k))
        c_grid = np.empty_like(G_grid)
        for j, t in enumerate(times):
            G_grid[:, j], c_grid[:, j] = semigroup.grid_density(semigroup.on_grid(u - t), positions[:, j], phi)
        for i, path in enumerate(paths):
            pair = _assemble(path, semigroup, phi, origin, times, G_grid[i], c_grid[i], x_grid, u)
            G_report[lo + i] = pair.G.at(times[report])
            F_report[lo + i] = pair.F.at(times[report])
            if keep_paths:
                pairs.append(pair)
        logger.debug("parabolic chunk %d: paths %d-%d", block, lo, hi)

    return ParabolicEnsemble(
        x=x_grid,
        window=(s, u),
        report_times=times[report],
        G=G_report,
        F=F_report,
        start_value=G_report[0, 0].copy(),
        seed=seed,
        pairs=pairs,
    )


def simulate_parabolic_pair(
    x, s: float, u: float, f: GridFunction, phi: Modulator, nu: LevyMeasureAtomic, seed: int, **kwargs
) -> ParabolicPair:
    ensemble = simulate_parabolic_ensemble(x, s, u, f, phi, nu, 1, seed, keep_paths=True, **kwargs)
    return ensemble.pairs[0]
