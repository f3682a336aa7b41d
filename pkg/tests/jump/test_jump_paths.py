import numpy as np
import pytest

from jump.levy import LevyMeasureAtomic
from jump.paths import simulate_jumps

N_SEEDS = 4000
S, U = 0.0, 1.5


@pytest.fixture(scope="module")
def nu():
    return LevyMeasureAtomic.on_lattice(1.0, [[1], [3]], [2.0, 0.5])


@pytest.fixture(scope="module")
def paths(nu):
    return [simulate_jumps(nu, S, U, seed=seed) for seed in range(N_SEEDS)]


def test_jump_count_is_poisson_with_rate_total_mass(nu, paths):
    counts = np.array([path.count for path in paths])
    expected = nu.total_mass * (U - S)
    se = counts.std(ddof=1) / np.sqrt(N_SEEDS)
    assert abs(counts.mean() - expected) <= 3 * se
    # Poisson: variance equals the mean
    assert counts.var(ddof=1) == pytest.approx(expected, rel=0.1)


def test_marks_follow_normalized_weights(nu, paths):
    index = np.concatenate([path.atom_index for path in paths])
    frequency = np.bincount(index, minlength=nu.n_atoms) / index.size
    target = nu.weights / nu.total_mass
    se = np.sqrt(target * (1 - target) / index.size)
    assert np.all(np.abs(frequency - target) <= 4 * se)


def test_marks_match_jumps(nu, paths):
    for path in paths[:50]:
        np.testing.assert_array_equal(path.jumps, nu.atoms[path.atom_index])


def test_single_atom_measure_always_jumps_to_its_atom():
    nu = LevyMeasureAtomic([[1.0]], [2.0], symmetric=False)
    total = 0
    for seed in range(200):
        path = simulate_jumps(nu, S, U, seed=seed)
        assert np.all(path.jumps == 1.0)
        assert np.all(path.atom_index == 0)
        total += path.count
    assert total > 0


def test_windows_are_respected(paths):
    for path in paths[:200]:
        assert np.all(path.signal_times > S)
        assert np.all(path.signal_times <= U)
