import numpy as np
import pytest

from core import ContractViolation, UsageError
from core.constants import beta_hilbert
from fourier.grid import GridFunction
from jump.levy import LevyMeasureAtomic
from jump.parabolic import (
    ParabolicSemigroup,
    parabolic_extension,
    simulate_parabolic_ensemble,
    simulate_parabolic_pair,
)
from jump.paths import JumpPath, StepPath, simulate_jumps
from jump.qv import discrete_qv, jump_qv_increments, parabolic_drift
from jump.subordination import check_jump_subordination

N_POINTS = 32
N_PATHS = 400
DIVISIONS = 128


@pytest.fixture(scope="module")
def data():
    return GridFunction.from_callable(1, N_POINTS, np.pi, lambda x: np.cos(x[..., 0]))


@pytest.fixture(scope="module")
def nu(data):
    return LevyMeasureAtomic.on_lattice(data.spacing, [[1], [3]], [1.0, 0.5])


@pytest.fixture(scope="module")
def halved(data, nu):
    return simulate_parabolic_ensemble([0.0], 0.0, 1.0, data, 0.5, nu, N_PATHS, seed=1, divisions=DIVISIONS)


@pytest.fixture(scope="module")
def identity(data, nu):
    modulator = lambda atoms: np.ones(atoms.shape[0])  # noqa: E731
    return simulate_parabolic_ensemble([0.0], 0.0, 1.0, data, modulator, nu, N_PATHS, seed=2, divisions=DIVISIONS)


def test_semigroup_damps_plane_waves(data, nu):
    decay = np.exp(nu.psi(np.array([1.0])))
    semigroup = ParabolicSemigroup(data, nu)
    np.testing.assert_allclose(semigroup.on_grid(1.0)[:, 0], decay * data.values[:, 0].real, atol=1e-12)
    assert parabolic_extension(data, nu, 1.0, [0.0])[0] == pytest.approx(decay, abs=1e-12)


def test_start_value_is_the_extension(halved, nu):
    assert halved.start_value[0] == pytest.approx(np.exp(nu.psi(np.array([1.0]))), abs=1e-12)
    assert halved.G.shape[0] == N_PATHS
    assert halved.report_times[0] == 0.0
    assert halved.report_times[-1] == 1.0


def test_jump_quadratic_variation_is_scaled(halved):
    for pair in halved.pairs:
        qF, qG = jump_qv_increments(pair, [1.0])
        np.testing.assert_allclose(qF, 0.25 * qG, rtol=0, atol=1e-12)


def test_identity_modulator_reproduces_g(identity):
    np.testing.assert_allclose(identity.F_final + identity.start_value, identity.G_final, atol=1e-3)


def test_processes_have_no_drift(halved):
    G_drift, F_drift = parabolic_drift(halved)
    assert G_drift.within()
    assert F_drift.within()
    np.testing.assert_array_equal(halved.F[:, 0], 0.0)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
def test_subordination_holds(halved, p):
    report = check_jump_subordination(halved, p)
    assert report.bound == pytest.approx(beta_hilbert(p) ** p)
    assert report.passed


def test_halved_modulator_shrinks_second_moment(halved):
    assert check_jump_subordination(halved, 2.0).moment_ratio.ratio < 0.3


def test_deterministic_given_seed(data, nu):
    first = simulate_parabolic_ensemble([0.0], 0.0, 1.0, data, 0.5, nu, 20, seed=3, divisions=16)
    second = simulate_parabolic_ensemble([0.0], 0.0, 1.0, data, 0.5, nu, 20, seed=3, divisions=16)
    np.testing.assert_array_equal(first.F, second.F)


def test_invalid_windows_and_measures(data, nu):
    with pytest.raises(UsageError):
        simulate_parabolic_ensemble([0.0], 1.0, 1.0, data, 0.5, nu, 10, seed=1)
    off_lattice = LevyMeasureAtomic.two_point([0.1])
    with pytest.raises(UsageError):
        simulate_parabolic_ensemble([0.0], 0.0, 1.0, data, 0.5, off_lattice, 10, seed=1)
    with pytest.raises(ContractViolation):
        simulate_parabolic_ensemble([0.0], 0.0, 1.0, data, 1.5, nu, 10, seed=1)


def test_jump_times_fall_in_window(nu):
    path = simulate_jumps(nu, -2.0, 3.0, seed=4)
    assert np.all((path.signal_times > -2.0) & (path.signal_times <= 3.0))
    assert np.all(np.diff(path.signal_times) > 0)
    np.testing.assert_allclose(path.position(3.0), np.sum(path.jumps, axis=0))


def test_jump_path_validation():
    with pytest.raises(UsageError):
        JumpPath([0.5, 0.2], [[1.0], [1.0]], (0.0, 1.0))
    with pytest.raises(UsageError):
        JumpPath([1.5], [[1.0]], (0.0, 1.0))


def test_discrete_qv_of_step_path():
    path = StepPath([0.0, 0.5], [[0.0], [2.0]])
    assert discrete_qv(path, [1.0], [0.0, 0.25, 0.75, 1.0]) == pytest.approx(4.0)
    with pytest.raises(UsageError):
        discrete_qv(path, [1.0], [0.0])


def test_single_pair_scales_every_jump(data, nu):
    pair = simulate_parabolic_pair([0.0], 0.0, 1.0, data, 0.5, nu, seed=5, divisions=32)
    assert pair.dG.shape[0] == pair.path.count
    np.testing.assert_array_equal(pair.phi_jumps, 0.5)
    np.testing.assert_allclose(pair.dF, 0.5 * pair.dG)
    assert pair.start_value[0] == pytest.approx(np.exp(nu.psi(np.array([1.0]))), abs=1e-12)
