import pytest

from core import NormedSpace, UsageError, beta_hilbert
from mart import adversarial_search


@pytest.fixture
def scalar():
    return NormedSpace.scalar()


def test_ratio_is_between_one_and_sharp_constant(scalar):
    result = adversarial_search(scalar, 4.0, depth=5, budget=300, seed=1)
    assert result.exact
    assert result.evaluations == 301
    assert 1.0 - 1e-12 <= result.ratio.ratio <= beta_hilbert(4.0)


def test_zero_budget_reports_identity_transform(scalar):
    result = adversarial_search(scalar, 3.0, depth=3, budget=0, seed=1)
    assert result.ratio.ratio == pytest.approx(1.0)
    assert result.accepted == 0


def test_monotone_in_budget(scalar):
    ratios = [adversarial_search(scalar, 4.0, depth=4, budget=b, seed=2).ratio.ratio for b in (0, 50, 200)]
    assert ratios == sorted(ratios)


def test_deterministic_given_seed(scalar):
    first = adversarial_search(scalar, 4.0, depth=4, budget=100, seed=3)
    second = adversarial_search(scalar, 4.0, depth=4, budget=100, seed=3)
    assert first.ratio == second.ratio
    assert first.accepted == second.accepted


def test_sampled_paths_for_deep_searches(scalar):
    result = adversarial_search(scalar, 3.0, depth=15, budget=20, seed=4, n_paths=2_000)
    assert not result.exact
    assert result.ratio.ratio >= 1.0 - 1e-12


def test_non_hilbert_space_is_rejected():
    with pytest.raises(UsageError):
        adversarial_search(NormedSpace.lq(2, 1.0), 3.0, depth=3, budget=1)
