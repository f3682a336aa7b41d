import logging

import numpy as np

from core.errors import ConfigError
from engine.base_runner import BaseRunner, ExperimentReport
from fourier.admissibility import sample_frequencies
from fourier.grid import GridFunction
from jump.levy import LevyMeasureAtomic
from jump.parabolic import simulate_parabolic_ensemble
from jump.qv import jump_qv_increments, parabolic_drift
from jump.subordination import check_jump_subordination
from jump.symbol import limit_symbol, multiplier_symbol_ms, random_symbol_bound
from lab.defaults import (
    ADMISSIBILITY_TOLERANCE,
    DRIFT_SE_BAND,
    QUADRATURE_TOLERANCE,
    SYMBOL_LIMIT_TOLERANCE,
)
from lab.seeding import derive_seed, rng_stream, stream_tag

logger = logging.getLogger(__name__)

QV_PATHS = 200
IDENTITY_PATHS = 2_000
QV_TOLERANCE = 1e-12
# 2|s||Psi| at which m_s has converged to m within e^-19
LIMIT_EXPONENT = 19.0
LIMIT_START_TIMES = (1.0, 10.0, 100.0)


class ParabolicRunner(BaseRunner):
    KIND = "jump-parabolic"

    def configure(self):
        params = self.params
        offsets = np.asarray(params["offsets"], dtype=float)
        if offsets.ndim != 2 or offsets.shape[0] == 0:
            raise ConfigError("params.offsets", "expected a non-empty list of integer vectors")
        if not np.all(offsets == np.round(offsets)) or np.any(np.all(offsets == 0, axis=1)):
            raise ConfigError("params.offsets", "lattice offsets must be nonzero integer vectors")
        for name in ("weights", "phi"):
            if len(params[name]) != offsets.shape[0]:
                raise ConfigError(f"params.{name}", f"needs one value per offset ({offsets.shape[0]})")
        d = offsets.shape[1]
        if len(params["x"]) != d:
            raise ConfigError("params.x", f"needs {d} coordinates")
        if not params["s"] < params["u"]:
            raise ConfigError("params.s", f"must be below u = {params['u']}")
        if params["n"] & (params["n"] - 1):
            raise ConfigError("params.n", "must be a power of two")

        spacing = 2 * params["L"] / params["n"]
        weights = np.asarray(params["weights"]) / 2
        phi = np.asarray(params["phi"])
        # each offset contributes the atoms +z and -z with half its weight each
        self.nu = LevyMeasureAtomic(
            np.concatenate([offsets, -offsets]) * spacing, np.concatenate([weights, weights])
        )
        self.phi = np.concatenate([phi, phi])
        self.boundary = self.boundary_data(d)

    def boundary_data(self, d: int) -> GridFunction:
        n, L = self.params["n"], self.params["L"]
        if self.params["boundary"] == "cosine":
            k = self.params["frequency"]
            return GridFunction.from_callable(d, n, L, lambda x: np.cos(np.pi * k * x[..., 0] / L))
        rng = rng_stream(self.seed, stream_tag("jump", "boundary"))
        return GridFunction.band_limited_random(d, n, L, rng, mean_zero=False, real=True)

    def simulate(self, phi, n_paths: int, label: str, keep_paths=None):
        params = self.params
        return simulate_parabolic_ensemble(
            params["x"],
            params["s"],
            params["u"],
            self.boundary,
            phi,
            self.nu,
            n_paths,
            derive_seed(self.seed, label),
            divisions=params["divisions"],
            keep_paths=keep_paths,
        )

    def execute(self, report: ExperimentReport):
        paths = self.params["paths"]
        ensemble = self.simulate(self.phi, paths, "modulated", keep_paths=False)

        G_drift, F_drift = parabolic_drift(ensemble)
        report.check("martingale drift of G", G_drift.worst_z, DRIFT_SE_BAND, G_drift.within())
        report.check("martingale drift of F", F_drift.worst_z, DRIFT_SE_BAND, F_drift.within())

        for p in self.params["p"]:
            result = check_jump_subordination(ensemble, p)
            ratio = result.moment_ratio
            report.check(
                f"subordination p={p:g}",
                ratio.ratio,
                ratio.upper_band(result.bound),
                result.passed,
                ratio.std_error,
            )
            report.add_row(p=p, paths=paths, moment_ratio=ratio.ratio, std_error=ratio.std_error, bound=result.bound)

        self.check_quadratic_variation(report)
        self.check_unmodulated_identity(report)
        self.check_symbol(report)

    def check_quadratic_variation(self, report: ExperimentReport):
        sample = self.simulate(self.phi, min(self.params["paths"], QV_PATHS), "qv", keep_paths=True)
        functional = np.ones(self.boundary.k)
        worst, jumps = 0.0, 0
        for pair in sample.pairs:
            dqv_F, dqv_G = jump_qv_increments(pair, functional)
            if pair.path.count:
                gap = np.abs(dqv_F - pair.phi_jumps**2 * dqv_G) / max(1.0, float(np.max(dqv_G)))
                worst = max(worst, float(np.max(gap)))
                jumps += pair.path.count
        report.check_at_most("per-jump QV identity", worst, QV_TOLERANCE)
        report.observe("QV jumps inspected", jumps)

    def check_unmodulated_identity(self, report: ExperimentReport):
        ensemble = self.simulate(1.0, min(self.params["paths"], IDENTITY_PATHS), "unmodulated")
        gap = np.abs(ensemble.F + ensemble.start_value - ensemble.G)
        report.check_at_most("F + G_s = G for phi = 1", np.max(gap), QUADRATURE_TOLERANCE)

    def check_symbol(self, report: ExperimentReport):
        s = self.params["s"] - self.params["u"]
        xi = sample_frequencies(self.nu.dim, self.params["symbol_samples"], self.seed)
        report.check_at_most(
            "|m_s| <= 1",
            np.max(np.abs(multiplier_symbol_ms(self.nu, self.phi, s, xi))),
            1.0 + ADMISSIBILITY_TOLERANCE,
        )
        if self.params["symbol_cases"]:
            worst_case = random_symbol_bound(
                derive_seed(self.seed, "symbol-cases"), self.params["symbol_cases"], self.nu.dim
            )
            logger.info("Largest |m_s| over %d random measures: %.12f", self.params["symbol_cases"], worst_case)
            report.check_at_most(
                "|m_s| <= 1 over random measures", worst_case, 1.0 + ADMISSIBILITY_TOLERANCE
            )

        m = limit_symbol(self.nu, self.phi, xi)
        psi = self.nu.psi(xi)
        worst, covered = 0.0, 0
        for scale in LIMIT_START_TIMES:
            start = s * scale
            converged = 2 * abs(start) * np.abs(psi) >= LIMIT_EXPONENT
            if np.any(converged):
                gap = np.abs(multiplier_symbol_ms(self.nu, self.phi, start, xi[converged]) - m[converged])
                worst = max(worst, float(np.max(gap)))
                covered += int(np.sum(converged))
        report.check_at_most("|m_s - m| once 2|s||Psi| >= 19", worst, SYMBOL_LIMIT_TOLERANCE)
        report.observe("converged symbol samples", covered)
