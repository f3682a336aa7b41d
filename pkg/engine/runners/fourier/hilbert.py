import math

import numpy as np

from core.constants import Exponent, beta_hilbert
from core.errors import ConfigError
from engine.base_runner import BaseRunner, ExperimentReport
from fourier.grid import GridFunction, GridSpec
from fourier.multiplier import apply_multiplier
from fourier.opnorm import hilbert_seed_functions, opnorm_lower_bound
from fourier.symbols import HilbertLine
from lab.seeding import derive_seed, rng_stream, stream_tag

IDENTITY_TOLERANCE = 1e-10
RATIO_RTOL = 1e-9
# the search must get this close to sqrt(p* - 1)
SQRT_MARGIN = 0.1


class HilbertRatioRunner(BaseRunner):
    KIND = "hilbert-ratio"

    def configure(self):
        n = self.params["n"]
        if n & (n - 1):
            raise ConfigError("params.n", "must be a power of two")
        if self.params["wave"] >= n // 2:
            raise ConfigError("params.wave", f"must stay below the Nyquist index {n // 2}")
        self.grid = GridSpec(d=1, n=n, L=self.params["L"])
        self.symbol = HilbertLine()

    def check_identities(self, report: ExperimentReport):
        n, L, k = self.grid.points_per_axis, self.grid.L, self.params["wave"]
        cosine = GridFunction.from_callable(1, n, L, lambda x: np.cos(np.pi * k * x[..., 0] / L))
        sine = np.sin(np.pi * k * cosine.points()[..., 0] / L)
        image = apply_multiplier(cosine, self.symbol)
        report.check_at_most(
            f"H cos = sin (k={k})", np.max(np.abs(image.values[..., 0] - sine)), IDENTITY_TOLERANCE
        )

        rng = rng_stream(self.seed, stream_tag("fourier", "hilbert", "square"))
        f = GridFunction.band_limited_random(1, n, L, rng, real=True)
        twice = apply_multiplier(apply_multiplier(f, self.symbol), self.symbol)
        scale = max(1.0, float(np.max(np.abs(f.values))))
        report.check_at_most(
            "H^2 = -I on mean-zero data", np.max(np.abs(twice.values + f.values)) / scale, IDENTITY_TOLERANCE
        )

    def execute(self, report: ExperimentReport):
        self.check_identities(report)
        restarts, iterations = self.params["restarts"], self.params["iterations"]
        gammas = self.params["gammas"]
        budget = (restarts + 1 + len(gammas)) * iterations
        for p in self.params["p"]:
            exponent = Exponent.of(p)
            seeds = hilbert_seed_functions(self.grid.empty(), p, gammas)
            result = opnorm_lower_bound(
                self.symbol,
                p,
                self.grid,
                budget=budget,
                seed=derive_seed(self.seed, "hilbert", p),
                seeds=seeds,
                restarts=restarts,
                iterations_per_restart=iterations,
            )
            beta = beta_hilbert(p)
            report.check_at_most(f"ratio p={p:g}", result.ratio, beta**2 * (1 + RATIO_RTOL))
            report.check_at_least(f"best ratio p={p:g}", result.ratio, math.sqrt(beta) - SQRT_MARGIN)
            # norm of the Hilbert transform on the line, for comparison only
            known = 1.0 / math.tan(math.pi / (2 * exponent.pstar))
            report.observe(f"best ratio p={p:g}", result.ratio)
            report.observe(f"cot(pi/2p*) p={p:g}", known)
            report.add_row(
                p=p,
                ratio=result.ratio,
                cot_bound=known,
                bound=beta**2,
                evaluations=result.iterations,
                stagnated=result.stagnated,
            )
