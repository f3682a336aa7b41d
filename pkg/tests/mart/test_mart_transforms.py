import numpy as np
import pytest

from core import (
    ContractViolation,
    DegenerateInputError,
    NormedSpace,
    SubordinationViolatedError,
    UsageError,
    beta_hilbert,
)
from mart import (
    ConstantFactor,
    ConstantRule,
    DiscretePathEnsemble,
    HistoryProductRule,
    PredictableSignFactor,
    RandomFactorRule,
    enumerate_paley_walsh,
    extract_factor,
    factor_process,
    gen_random_walk,
    lp_moment,
    martingale_drift,
    subordination_ratio,
    transform,
)


@pytest.fixture
def scalar():
    return NormedSpace.scalar()


def test_random_walk_shape_and_start(scalar):
    f = gen_random_walk(scalar, 6, 1_000, ConstantRule([1.0]), seed=1)
    assert f.increments.shape == (1_000, 7, 1)
    assert f.history.shape == (1_000, 6)
    np.testing.assert_array_equal(f.step(0), 0.0)
    assert set(np.unique(f.history)) == {-1.0, 1.0}


def test_random_walk_is_deterministic(scalar):
    whole = gen_random_walk(scalar, 4, 300, ConstantRule([1.0]), seed=2, chunk_size=64)
    again = gen_random_walk(scalar, 4, 300, ConstantRule([1.0]), seed=2, chunk_size=64)
    np.testing.assert_array_equal(whole.increments, again.increments)


@pytest.mark.parametrize("noise", ["rademacher", "gaussian", "uniform"])
def test_random_walk_has_no_drift(scalar, noise):
    f = gen_random_walk(scalar, 5, 20_000, HistoryProductRule([1.0]), seed=3, noise=noise)
    assert martingale_drift(f).within()


def test_unknown_noise_is_rejected(scalar):
    with pytest.raises(UsageError):
        gen_random_walk(scalar, 3, 10, ConstantRule([1.0]), seed=1, noise="cauchy")


def test_coefficient_rules_see_only_past_noise(scalar):
    seen = []

    class Recording(ConstantRule):
        def __call__(self, step, history):
            seen.append((step, history.shape[1]))
            return super().__call__(step, history)

    gen_random_walk(scalar, 4, 8, Recording([1.0]), seed=4)
    assert seen == [(1, 0), (2, 1), (3, 2), (4, 3)]


def test_paley_walsh_enumeration_is_exact(scalar):
    f = enumerate_paley_walsh(scalar, 5, HistoryProductRule([1.0]))
    assert f.exact
    assert f.n_paths == 32
    drift = martingale_drift(f)
    np.testing.assert_allclose(drift.mean, 0.0, atol=1e-15)
    assert lp_moment(f, 5, 2.0).value == pytest.approx(5.0)
    assert lp_moment(f, 5, 2.0).std_error == 0.0


def test_paley_walsh_cap(scalar):
    with pytest.raises(UsageError):
        enumerate_paley_walsh(scalar, 6, ConstantRule([1.0]), max_paths=32)


def test_extract_recovers_constant_factor(scalar):
    f = gen_random_walk(scalar, 6, 500, ConstantRule([1.0]), seed=5)
    g = transform(f, factor_process(f, ConstantFactor(-0.5)))
    extracted = extract_factor(f, g)
    np.testing.assert_allclose(extracted.values[:, 1:], -0.5)


def test_extract_detects_factor_above_one(scalar):
    f = gen_random_walk(scalar, 4, 100, ConstantRule([1.0]), seed=6)
    g = DiscretePathEnsemble(scalar, 2.0 * f.increments)
    with pytest.raises(SubordinationViolatedError):
        extract_factor(f, g)


def test_extract_detects_rotated_increments():
    space = NormedSpace.lq(2)
    f = gen_random_walk(space, 3, 50, ConstantRule([1.0, 0.0]), seed=7)
    g = DiscretePathEnsemble(space, f.increments[:, :, ::-1])
    with pytest.raises(SubordinationViolatedError):
        extract_factor(f, g)


def test_factor_contract(scalar):
    with pytest.raises(ContractViolation):
        ConstantFactor(1.5)
    with pytest.raises(ContractViolation):
        RandomFactorRule(seed=1, low=-2.0, high=1.0)


def test_random_factor_rule_is_predictable_and_bounded(scalar):
    f = gen_random_walk(scalar, 6, 2_000, ConstantRule([1.0]), seed=8)
    a = factor_process(f, RandomFactorRule(seed=9))
    assert np.max(np.abs(a.values)) <= 1.0
    # equal sign prefixes give equal factors
    same_prefix = np.all(f.history[:, :2] == f.history[0, :2], axis=1)
    assert np.all(a.values[same_prefix, 3] == a.values[0, 3])


def test_p2_sign_transform_preserves_l2_norm_exactly(scalar):
    f = enumerate_paley_walsh(scalar, 8, HistoryProductRule([1.0]))
    g = transform(f, factor_process(f, PredictableSignFactor()))
    ratio = subordination_ratio(f, g, 8, 2.0)
    assert ratio.ratio == pytest.approx(1.0, abs=1e-12)
    assert ratio.std_error == 0.0


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_monte_carlo_ratio_within_sharp_constant(p):
    space = NormedSpace.lq(4)
    direction = np.full(4, 0.5)
    f = gen_random_walk(space, 8, 20_000, HistoryProductRule(direction), seed=10)
    g = transform(f, factor_process(f, PredictableSignFactor()))
    ratio = subordination_ratio(f, g, 8, p)
    assert ratio.within(beta_hilbert(p))
    assert ratio.std_error > 0


def test_zero_denominator_is_degenerate(scalar):
    f = gen_random_walk(scalar, 3, 10, ConstantRule([0.0]), seed=11)
    with pytest.raises(DegenerateInputError):
        subordination_ratio(f, f, 3, 2.0)
