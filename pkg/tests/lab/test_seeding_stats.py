import numpy as np
import pytest

from lab.seeding import derive_seed, iter_chunks, rng_stream, stream_tag
from lab.stats import DriftReport, RatioEstimate, jackknife_ratio, mean_estimate


def test_streams_are_reproducible():
    tag = stream_tag("tests", "reproducible")
    first = rng_stream(42, tag, block=3).standard_normal(5)
    second = rng_stream(42, tag, block=3).standard_normal(5)
    np.testing.assert_array_equal(first, second)


def test_streams_differ_by_block_tag_and_seed():
    tag = stream_tag("tests")
    base = rng_stream(42, tag, 0).standard_normal(5)
    assert not np.allclose(base, rng_stream(42, tag, 1).standard_normal(5))
    assert not np.allclose(base, rng_stream(42, stream_tag("other"), 0).standard_normal(5))
    assert not np.allclose(base, rng_stream(43, tag, 0).standard_normal(5))


def test_large_seeds_are_accepted():
    rng_stream(2**64 - 1, stream_tag("tests")).standard_normal(1)


def test_derived_seeds():
    assert derive_seed(1, "p", "2.0") == derive_seed(1, "p", "2.0")
    assert derive_seed(1, "p", "2.0") != derive_seed(1, "p", "3.0")
    assert derive_seed(1, "p", "2.0") != derive_seed(2, "p", "2.0")
    assert 0 <= derive_seed(1, "p") < 2**64


def test_chunks_cover_the_range():
    assert list(iter_chunks(10, 4)) == [(0, 0, 4), (1, 4, 8), (2, 8, 10)]
    assert list(iter_chunks(0, 4)) == []


def test_mean_estimate():
    estimate = mean_estimate([1.0, 2.0, 3.0])
    assert estimate.value == pytest.approx(2.0)
    assert estimate.std_error == pytest.approx(1.0 / np.sqrt(3.0))
    assert mean_estimate([5.0]).std_error == 0.0


def test_jackknife_ratio():
    rng = np.random.default_rng(1)
    samples = rng.exponential(size=1_000)
    same = jackknife_ratio(samples, samples, power=2.0)
    assert same.ratio == pytest.approx(1.0)
    assert same.std_error == pytest.approx(0.0, abs=1e-12)
    doubled = jackknife_ratio(4.0 * samples, samples, power=2.0)
    assert doubled.ratio == pytest.approx(2.0)


def test_ratio_band():
    ratio = RatioEstimate(2.05, 0.041)
    assert ratio.relative_error == pytest.approx(0.02)
    assert ratio.upper_band(2.0) == pytest.approx(2.12)
    assert ratio.within(2.0)
    assert not ratio.within(2.0, band=0.0)


def test_drift_report_within():
    assert DriftReport(np.zeros(3), np.zeros(3)).within()
    assert not DriftReport(np.array([0.1]), np.array([0.0])).within()
    assert DriftReport(np.array([0.1]), np.array([0.05])).within()
    assert DriftReport(np.array([0.1]), np.array([0.05])).worst_z == pytest.approx(2.0)
