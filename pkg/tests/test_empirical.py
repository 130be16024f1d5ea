import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.stats import norm

from randheat import (
    Normal, Quadrature, RangeMismatch, build_empirical, ks_distance,
)
from randheat.density import DensityCurve
from randheat.empirical import curve_cdf
from conftest import preset_cfg


def _normal_curve(mu=0.0, sd=1.0, lo=-8.0, hi=8.0, n=2001):
    grid = np.linspace(lo, hi, n)
    return DensityCurve(x=0.5, t=0.1, N=1, u_grid=grid,
                        values=norm.pdf(grid, mu, sd), estimator=Quadrature())


def _empirical_from_draws(draws):
    """Wrap raw draws in the package's empirical container."""
    from randheat.empirical import EmpiricalDistribution, _HIST_BINS
    s = np.sort(np.asarray(draws, dtype=float))
    counts, edges = np.histogram(s, bins=_HIST_BINS)
    return EmpiricalDistribution(sorted_samples=s, bin_edges=edges,
                                 counts=counts, seed=None,
                                 sample_count=s.size)


# ---------- correctness of the distance itself ----------

def test_ks_self_test_standard_normal():
    """Exact-law sanity: 10^6 normal draws against the true normal curve.

    The expected KS distance is ~0.43/sqrt(m) ~ 4e-4; anything above 0.002
    signals a bug in the CDF interpolation or the D+ / D- bookkeeping.
    """
    draws = np.random.default_rng(123).standard_normal(1_000_000)
    d = ks_distance(_empirical_from_draws(draws), _normal_curve())
    assert d < 0.002


def test_ks_detects_a_shift():
    draws = np.random.default_rng(5).standard_normal(200_000)
    shifted = _normal_curve(mu=1.5)
    d = ks_distance(_empirical_from_draws(draws), shifted)
    assert d > 0.5


def test_ks_matches_scipy_on_small_sample():
    from scipy.stats import kstest
    draws = np.random.default_rng(9).standard_normal(5_000)
    d = ks_distance(_empirical_from_draws(draws), _normal_curve())
    ref = kstest(draws, "norm").statistic
    # ours interpolates the CDF on a fine grid; agreement to grid resolution
    assert abs(d - ref) < 5e-4


def test_curve_cdf_is_monotone_and_normalized():
    cdf = curve_cdf(_normal_curve())
    assert cdf[0] == 0.0
    assert abs(cdf[-1] - 1.0) < 1e-6
    assert np.all(np.diff(cdf) >= 0.0)


def test_range_mismatch_raises():
    draws = np.concatenate([np.random.default_rng(2).standard_normal(10_000),
                            np.full(200, 50.0)])  # 2% far outside the grid
    with pytest.raises(RangeMismatch):
        ks_distance(_empirical_from_draws(draws), _normal_curve())


def test_tiny_outside_fraction_tolerated():
    draws = np.concatenate([np.random.default_rng(2).standard_normal(100_000),
                            np.full(5, 50.0)])  # 0.005% outside
    d = ks_distance(_empirical_from_draws(draws), _normal_curve())
    assert d < 0.01


# ---------- the sampling container ----------

def test_build_empirical_is_seeded():
    cfg = preset_cfg("example1")
    a = build_empirical(cfg.problem, cfg.x, cfg.t, 2, 20_000, rng=77)
    b = build_empirical(cfg.problem, cfg.x, cfg.t, 2, 20_000, rng=77)
    assert_allclose(a.sorted_samples, b.sorted_samples, rtol=0, atol=0)
    assert a.seed == 77
    assert a.sample_count == 20_000
    assert np.all(np.diff(a.sorted_samples) >= 0.0)


def test_build_empirical_rejects_small_samples():
    cfg = preset_cfg("example1")
    with pytest.raises(ValueError):
        build_empirical(cfg.problem, cfg.x, cfg.t, 1, 100, rng=0)


def test_empirical_cdf_evaluates():
    cfg = preset_cfg("example1")
    emp = build_empirical(cfg.problem, cfg.x, cfg.t, 1, 50_000, rng=4)
    # cdf at the extremes
    assert emp.cdf(emp.sorted_samples[0] - 1.0) == 0.0
    assert emp.cdf(emp.sorted_samples[-1] + 1.0) == 1.0
    mid = float(np.median(emp.sorted_samples))
    assert abs(emp.cdf(mid) - 0.5) < 0.01


def test_histogram_matches_poisson_errors():
    """Bin counts of series samples against the analytic density.

    Expected count per bin is m * integral of f over the bin; the deviation
    must stay within 3 Poisson standard errors plus the density's own
    quadrature budget for every bin with a meaningful expectation.
    """
    from randheat import EngineSettings, density_uN_det
    cfg = preset_cfg("example1")
    emp = build_empirical(cfg.problem, cfg.x, cfg.t, 2, 500_000, rng=31)
    curve = density_uN_det(cfg.problem, cfg.x, cfg.t, 2,
                           np.linspace(emp.bin_edges[0], emp.bin_edges[-1],
                                       4001),
                           EngineSettings(estimator=Quadrature()))
    cdf = curve_cdf(curve)
    edge_cdf = np.interp(emp.bin_edges, curve.u_grid, cdf)
    expected = emp.sample_count * np.diff(edge_cdf)
    keep = expected > 50.0
    dev = np.abs(emp.counts[keep] - expected[keep])
    bound = 3.0 * np.sqrt(expected[keep]) + 1e-3 * emp.sample_count * \
        np.diff(emp.bin_edges)[keep]
    frac_ok = np.mean(dev <= bound)
    assert frac_ok > 0.99, f"{(~(dev <= bound)).sum()} bins out of band"
