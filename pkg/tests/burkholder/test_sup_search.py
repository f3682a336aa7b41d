import pytest

from burkholder import BurkholderParams, sup_u_approx, wang_u
from core import NormedSpace, UsageError

PAIRS = [(1.0, 0.0), (0.5, 0.5), (0.25, -1.0), (1.0, 0.75), (-0.5, 0.125)]


@pytest.fixture
def params():
    return BurkholderParams.sharp(NormedSpace.scalar(), 3.0)


@pytest.mark.parametrize("x, y", PAIRS)
def test_sandwich(params, x, y):
    upper = float(wang_u(params, [x], [y]))
    for depth in range(3):
        approx = sup_u_approx(params, [x], [y], depth, seed=1)
        assert approx.trivial - 1e-12 <= approx.value <= upper + 1e-9


@pytest.mark.parametrize("x, y", PAIRS)
def test_monotone_in_depth(params, x, y):
    values = [sup_u_approx(params, [x], [y], depth, seed=1).value for depth in range(3)]
    assert values == sorted(values)


def test_depth_zero_is_trivial_value(params):
    approx = sup_u_approx(params, [1.0], [0.5], 0)
    assert approx.value == pytest.approx(approx.trivial)
    assert approx.depth == 0
    assert not approx.exhausted


def test_deterministic(params):
    first = sup_u_approx(params, [0.5], [0.25], 2, seed=3)
    second = sup_u_approx(params, [0.5], [0.25], 2, seed=3)
    assert first == second


@pytest.mark.parametrize("depth, branching", [(-1, 2), (7, 2), (1, 1), (1, 5)])
def test_rejects_out_of_range_arguments(params, depth, branching):
    with pytest.raises(UsageError):
        sup_u_approx(params, [1.0], [0.0], depth, branching=branching)
