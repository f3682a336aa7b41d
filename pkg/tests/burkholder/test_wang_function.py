import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burkholder import (
    BurkholderParams,
    burkholder_v,
    check_majorization,
    diagonal_value,
    sample_admissible_probes,
    trivial_value,
    wang_u,
)
from core import DomainError, NormedSpace, UnsupportedSpaceError
from lab.seeding import rng_stream

P_VALUES = [1.5, 2.0, 3.0, 4.0]


@pytest.fixture
def plane():
    return NormedSpace.lq(2)


def test_value_at_unit_vector_for_p3(plane):
    params = BurkholderParams.sharp(plane, 3.0)
    # 3 * (2/3)^2 * (0 - 2) * 1^2
    assert wang_u(params, [1.0, 0.0], [0.0, 0.0]) == pytest.approx(-8 / 3, abs=1e-12)


def test_value_at_origin_is_zero(plane):
    params = BurkholderParams.sharp(plane, 1.5)
    assert wang_u(params, [0.0, 0.0], [0.0, 0.0]) == 0.0


def test_p2_closed_form(plane):
    params = BurkholderParams.sharp(plane, 2.0)
    rng = rng_stream(11)
    x = rng.uniform(-1, 1, (10_000, 2))
    y = rng.uniform(-1, 1, (10_000, 2))
    expected = np.sum(y**2, axis=1) - np.sum(x**2, axis=1)
    np.testing.assert_allclose(wang_u(params, x, y), expected, rtol=0, atol=1e-12)


@pytest.mark.parametrize("p", P_VALUES)
@pytest.mark.parametrize("dim", [1, 2, 4])
def test_majorization(p, dim):
    space = NormedSpace.lq(dim)
    params = BurkholderParams.sharp(space, p)
    x, y = sample_admissible_probes(space, 2_000, seed=5, radius=3.0, n_directions=0)
    assert np.min(check_majorization(params, x, y)) >= -1e-9


@pytest.mark.parametrize("p", P_VALUES)
def test_diagonal_is_nonpositive(p, plane):
    params = BurkholderParams.sharp(plane, p)
    rng = rng_stream(12)
    x = rng.standard_normal((1_000, 2))
    eps = rng.uniform(-1, 1, 1_000)
    assert np.max(diagonal_value(params, x, eps)) <= 1e-12


def test_trivial_value(plane):
    params = BurkholderParams.sharp(plane, 3.0)
    assert trivial_value(params, [1.0, 0.0], [0.0, 2.0]) == pytest.approx(8.0 - 8.0)


def test_v_is_u_in_rotated_coordinates(plane):
    params = BurkholderParams.sharp(plane, 3.0)
    x, y = np.array([0.3, -0.2]), np.array([1.1, 0.4])
    assert burkholder_v(params, x, y) == pytest.approx(wang_u(params, (x - y) / 2, (x + y) / 2))


def test_non_hilbert_norm_is_rejected():
    params = BurkholderParams.sharp(NormedSpace.lq(2, 1.0), 3.0)
    with pytest.raises(UnsupportedSpaceError):
        wang_u(params, [1.0, 0.0], [0.0, 1.0])


def test_beta_below_sharp_constant_is_rejected(plane):
    with pytest.raises(DomainError):
        BurkholderParams.sharp(plane, 3.0, beta=1.5)


def test_larger_beta_is_accepted(plane):
    assert BurkholderParams.sharp(plane, 3.0, beta=5.0).beta == 5.0


@given(
    st.sampled_from(P_VALUES),
    st.floats(min_value=-5, max_value=5, allow_nan=False).filter(lambda a: abs(a) > 1e-3),
    st.lists(st.floats(min_value=-2, max_value=2, allow_nan=False), min_size=4, max_size=4),
)
@settings(max_examples=300, deadline=None)
def test_homogeneity(p, alpha, coords):
    params = BurkholderParams.sharp(NormedSpace.lq(2), p)
    x, y = np.asarray(coords[:2]), np.asarray(coords[2:])
    scale = (np.linalg.norm(x) + np.linalg.norm(y)) ** p
    lhs = wang_u(params, alpha * x, alpha * y)
    rhs = abs(alpha) ** p * wang_u(params, x, y)
    assert abs(lhs - rhs) <= 1e-9 * abs(alpha) ** p * max(scale, 1.0)
