import numpy as np

from core.errors import ConfigError
from engine.base_runner import BaseRunner, ExperimentReport
from engine.runners.fourier.parser import SymbolParser, complex_value
from fourier.admissibility import parameter_violations
from fourier.symbols import eval_symbol


def format_value(value: complex) -> str:
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    return repr(value)


class SymbolEvalRunner(BaseRunner):
    KIND = "symbol-eval"

    def configure(self):
        self.symbol = SymbolParser().parse(self.params["symbol"], "params.symbol")
        try:
            xi = np.asarray(self.params["xi"], dtype=float)
        except (TypeError, ValueError):
            raise ConfigError("params.xi", "expected a point or a list of points")
        if xi.ndim == 1:
            # a flat list is one point, except for symbols on the line
            xi = xi[:, None] if self.symbol.dim == 1 else xi[None]
        if xi.ndim != 2 or (self.symbol.dim is not None and xi.shape[1] != self.symbol.dim):
            raise ConfigError("params.xi", f"{self.symbol.name} takes points of R^{self.symbol.dim}")
        self.xi = xi

        self.expected = None
        if self.params["expected"] is not None:
            expected = self.params["expected"]
            if len(expected) != xi.shape[0]:
                raise ConfigError("params.expected", f"needs one value per point ({xi.shape[0]})")
            self.expected = [complex_value(v, f"params.expected[{i}]") for i, v in enumerate(expected)]

    def execute(self, report: ExperimentReport):
        values = np.atleast_1d(eval_symbol(self.symbol, self.xi))
        for i, (point, value) in enumerate(zip(self.xi, values)):
            print(f"m({point.tolist()}) = {format_value(value)}")
            report.add_row(xi=point.tolist(), re=value.real, im=value.imag, modulus=abs(value))
            if self.expected is not None:
                report.check_at_most(
                    f"value at {point.tolist()}", abs(value - self.expected[i]), self.params["tolerance"]
                )
        report.observe("symbol", self.symbol.name)
        report.observe("parameters", self.symbol.parameters())
        report.observe("parameter violations", parameter_violations(self.symbol))
