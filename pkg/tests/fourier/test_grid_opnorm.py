import numpy as np
import pytest

from core import UsageError
from fourier.grid import GridFunction, GridSpec, lp_norm
from fourier.multiplier import apply_multiplier
from fourier.opnorm import duality_map, hilbert_seed_functions, opnorm_lower_bound
from fourier.symbols import HilbertLine, RieszAlpha

SMALL_2D = GridSpec(d=2, n=16, L=np.pi)


@pytest.fixture
def cosine():
    return GridFunction.from_callable(1, 64, np.pi, lambda x: np.cos(x[..., 0]))


def test_hilbert_transform_of_cosine(cosine):
    image = apply_multiplier(cosine, HilbertLine())
    np.testing.assert_allclose(image.values[:, 0], np.sin(cosine.points()[:, 0]), atol=1e-10)


def test_unitary_transform_round_trip(cosine):
    back = GridFunction.from_spectrum(1, 64, np.pi, cosine.forward())
    np.testing.assert_allclose(back.values, cosine.values, atol=1e-12)
    np.testing.assert_allclose(
        np.sum(np.abs(cosine.forward()) ** 2) * cosine.cell_volume, lp_norm(cosine, 2.0) ** 2
    )


@pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
def test_lp_norm_of_constant(p):
    ones = GridFunction(1, 32, 2.0, np.ones(32))
    assert lp_norm(ones, p) == pytest.approx(4.0 ** (1.0 / p))


def test_grid_validation():
    with pytest.raises(UsageError):
        GridFunction(1, 12, 1.0, np.zeros(12))
    with pytest.raises(UsageError):
        GridFunction(1, 16, -1.0, np.zeros(16))
    with pytest.raises(UsageError):
        lp_norm(GridFunction(1, 16, 1.0, np.ones(16)), 1.0)


def test_binary_layout_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    f = GridFunction.band_limited_random(2, 8, 1.0, rng, k=2)
    path = tmp_path / "f.grid"
    f.save(path)
    loaded = GridFunction.load(path)
    np.testing.assert_array_equal(loaded.values, f.values)
    with pytest.raises(UsageError):
        GridFunction.from_bytes(path.read_bytes()[:10])


def test_duality_map_powers_the_modulus(cosine):
    image = duality_map(cosine, 3.0)
    np.testing.assert_allclose(np.abs(image.values), np.abs(cosine.values) ** 2, atol=1e-15)


def test_p2_norm_equals_symbol_maximum():
    result = opnorm_lower_bound(RieszAlpha(), 2.0, grid=SMALL_2D, budget=20, seed=1)
    assert result.ratio == pytest.approx(1.0, abs=1e-9)
    assert result.witness is not None


def test_lower_bound_respects_norm_bound():
    m = RieszAlpha()
    result = opnorm_lower_bound(m, 3.0, grid=SMALL_2D, budget=40, seed=1, restarts=2, iterations_per_restart=10)
    assert 1.0 - 1e-9 <= result.ratio <= m.norm_bound(3.0) + 0.02
    assert result.iterations <= 40


def test_lower_bound_is_monotone_in_budget():
    ratios = [
        opnorm_lower_bound(
            RieszAlpha(), 3.0, grid=SMALL_2D, budget=budget, seed=2, restarts=2, iterations_per_restart=10
        ).ratio
        for budget in (1, 10, 30)
    ]
    assert ratios == sorted(ratios)


def test_budget_must_be_positive():
    with pytest.raises(UsageError):
        opnorm_lower_bound(RieszAlpha(), 3.0, grid=SMALL_2D, budget=0)


def test_hilbert_seeds():
    grid = GridSpec(d=1, n=128, L=np.pi).empty()
    seeds = hilbert_seed_functions(grid, 4.0, gammas=(0.5, 0.9))
    assert len(seeds) == 2
    assert all(np.all(np.isfinite(seed.values)) for seed in seeds)
    with pytest.raises(UsageError):
        hilbert_seed_functions(GridSpec(d=2, n=8).empty(), 4.0)


def test_seeded_hilbert_search_starts_from_plane_waves():
    spec = GridSpec(d=1, n=128, L=np.pi)
    seeds = hilbert_seed_functions(spec.empty(), 4.0)
    plain = opnorm_lower_bound(HilbertLine(), 4.0, grid=spec, budget=1, seed=1)
    seeded = opnorm_lower_bound(
        HilbertLine(), 4.0, grid=spec, budget=60, seed=1, seeds=seeds, restarts=0, iterations_per_restart=20
    )
    assert plain.ratio == pytest.approx(1.0, abs=1e-9)
    assert seeded.ratio >= plain.ratio - 1e-12
    assert seeded.restarts >= 1
    assert seeded.ratio <= HilbertLine().norm_bound(4.0)
