import numpy as np

from fourier.grid import GridFunction
from fourier.symbols import MultiplierSymbol


def symbol_on_grid(grid: GridFunction, m: MultiplierSymbol) -> np.ndarray:
    """Symbol values at the grid frequencies, FFT order, shape ``(n,)*d``."""
    return np.asarray(m.evaluate(grid.frequencies()), dtype=complex)


def apply_symbol_values(f: GridFunction, values: np.ndarray) -> GridFunction:
    spectrum = f.forward() * values[..., None]
    return GridFunction.from_spectrum(f.d, f.n, f.L, spectrum)


def apply_multiplier(f: GridFunction, m: MultiplierSymbol) -> GridFunction:
    """``T_m f = F^-1(m F f)``, componentwise."""
    return apply_symbol_values(f, symbol_on_grid(f, m))
