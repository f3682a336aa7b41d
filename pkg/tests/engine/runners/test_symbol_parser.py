import numpy as np
import pytest

from core import ConfigError
from engine.runners.fourier import SymbolParser
from fourier.symbols import ConstantSymbol, LevyRatio, RieszAlpha, SphereAlpha


@pytest.fixture
def symbol_parser():
    return SymbolParser()


def test_parse_rejects_none(symbol_parser):
    with pytest.raises(ConfigError) as error:
        symbol_parser.parse(None)
    assert error.value.field == "symbol"


def test_parse_converts_riesz(symbol_parser):
    symbol = symbol_parser.parse({"type": "riesz-alpha", "axis": 2, "alpha": 1, "dim": 3})

    assert isinstance(symbol, RieszAlpha)
    assert (symbol.axis, symbol.alpha, symbol.dim) == (2, 1.0, 3)


def test_parse_ignores_runner_keys(symbol_parser):
    symbol = symbol_parser.parse({"type": "beurling-ahlfors", "label": "ba", "min_ratio": 1.0})
    assert symbol.name == "beurling-ahlfors"


def test_parse_converts_complex_constant(symbol_parser):
    symbol = symbol_parser.parse({"type": "constant", "value": {"re": 0, "im": 1}})

    assert isinstance(symbol, ConstantSymbol)
    assert symbol.value == 1j


def test_parse_converts_levy_ratio(symbol_parser):
    symbol = symbol_parser.parse(
        {"type": "levy-ratio", "levy": {"atoms": [[1], [-1]], "weights": [1, 1], "phi": [0.5, 0.5]}}
    )

    assert isinstance(symbol, LevyRatio)
    assert symbol.mu is None
    np.testing.assert_allclose(symbol.evaluate([[1.0]]), [0.5])


def test_parse_converts_dominated_measures(symbol_parser):
    symbol = symbol_parser.parse(
        {
            "type": "levy-dominated",
            "small": {"atoms": [[1], [-1]], "weights": [0.5, 0.5]},
            "large": {"atoms": [[1], [-1], [3], [-3]], "weights": [1, 1, 1, 1]},
        }
    )

    np.testing.assert_allclose(symbol.phi, [0.5, 0.5, 0.0, 0.0])


def test_parse_converts_sphere_alpha(symbol_parser):
    symbol = symbol_parser.parse(
        {"type": "sphere-alpha", "sphere": {"directions": [[1, 0], [0, 2]], "weights": [1, 1]}, "alpha": 1.5}
    )

    assert isinstance(symbol, SphereAlpha)
    np.testing.assert_allclose(symbol.mu.directions, [[1, 0], [0, 1]])


@pytest.mark.parametrize(
    "description, field",
    [
        ({"type": "unknown"}, "symbol.type"),
        ({"axis": 1}, "symbol.type"),
        ({"type": "hilbert", "axis": 1}, "symbol.axis"),
        ({"type": "levy-ratio", "levy": {"atoms": [[1], [-1]]}}, "symbol.levy.weights"),
        ({"type": "levy-ratio", "levy": {"atoms": [[1]], "weights": [1]}}, "symbol"),
        ({"type": "constant", "value": "one"}, "symbol.value"),
        ({"type": "constant", "value": {"re": 1, "phase": 0}}, "symbol.value"),
        ({"type": "levy-ratio"}, "symbol"),
    ],
)
def test_parse_errors_name_the_field(symbol_parser, description, field):
    with pytest.raises(ConfigError) as error:
        symbol_parser.parse(description)
    assert error.value.field == field
