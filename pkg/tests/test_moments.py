import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from randheat import (
    EngineSettings, MassDeficit, Quadrature, density_uN_det, moment_report,
    moments_from_density, moments_mc,
)
from randheat.density import DensityCurve
from randheat.moments import _jackknife_mean_var
from conftest import (
    curve_on_shared_grid, exact_mean, exact_variance, moment_grid, preset_cfg,
)

QUAD = EngineSettings(estimator=Quadrature())


def _moment_curve(name, N):
    cfg = preset_cfg(name)
    from randheat import density_uN_random
    build = (density_uN_random if cfg.problem.has_random_bc
             else density_uN_det)
    return build(cfg.problem, cfg.x, cfg.t, N, moment_grid(name, N), QUAD)


def test_density_moments_match_exact_example1():
    for N in (1, 2, 3, 4):
        rep = moments_from_density(_moment_curve("example1", N))
        mean, var = rep
        assert_allclose(mean, 2.0, atol=1e-6)
        assert_allclose(var, exact_variance("example1", N), rtol=1e-4)


def test_density_moments_match_exact_example3():
    for N in (1, 3):
        mean, var = moments_from_density(_moment_curve("example3", N))
        assert_allclose(mean, exact_mean("example3"), atol=1e-5)
        assert_allclose(var, exact_variance("example3", N), rtol=2e-3)


def test_variance_nondecreasing_in_N():
    # each added term contributes nonnegative independent variance
    for name in ("example1", "example3"):
        vs = [moments_from_density(_moment_curve(name, N))[1]
              for N in (1, 2, 3, 4)]
        assert all(a <= b + 1e-12 for a, b in zip(vs, vs[1:])), (name, vs)


def test_mean_is_N_independent():
    means = [moments_from_density(_moment_curve("example3", N))[0]
             for N in (1, 2, 3, 4)]
    assert max(means) - min(means) < 1e-5


def test_mass_deficit_raises():
    cfg = preset_cfg("example1")
    # a grid that clips half the distribution
    grid = np.linspace(2.0, 2.5, 51)
    curve = density_uN_det(cfg.problem, cfg.x, cfg.t, 2, grid, QUAD)
    with pytest.raises(MassDeficit):
        moments_from_density(curve)


def test_jackknife_matches_closed_forms():
    x = np.array([1.0, 2.0, 4.0, 8.0, 16.0])
    mean, se_mean, var, se_var = _jackknife_mean_var(x)
    assert_allclose(mean, np.mean(x), rtol=1e-14)
    assert_allclose(var, np.var(x), rtol=1e-14)
    # jackknife SE of the mean equals the classic s/sqrt(n) exactly
    assert_allclose(se_mean, np.std(x, ddof=1) / math.sqrt(x.size),
                    rtol=1e-12)
    assert se_var > 0.0


def test_mc_moments_within_errors():
    cfg = preset_cfg("example1")
    (mean, se_m), (var, se_v) = moments_mc(cfg.problem, cfg.x, cfg.t, 2,
                                           200_000, rng=8)
    assert abs(mean - 2.0) < 4.0 * se_m
    assert abs(var - exact_variance("example1", 2)) < 4.0 * se_v


def test_mc_moments_rejects_small_samples():
    cfg = preset_cfg("example1")
    with pytest.raises(ValueError):
        moments_mc(cfg.problem, cfg.x, cfg.t, 1, 100, rng=1)


def test_moment_report_bundles_both():
    cfg = preset_cfg("example1")
    curve = _moment_curve("example1", 2)
    rep = moment_report(cfg.problem, cfg.x, cfg.t, 2, curve,
                        mc_samples=50_000, rng=3)
    assert rep.N == 2
    assert 0.98 <= rep.grid_mass <= 1.002
    assert rep.var_density >= -1e-6
    assert rep.mean_mc is not None and rep.var_mc_se is not None
    # the two estimates describe one distribution
    assert abs(rep.mean_density - rep.mean_mc) < max(3.0 * rep.mean_mc_se, 1e-3)
    assert abs(rep.var_density - rep.var_mc) < max(3.0 * rep.var_mc_se, 1e-3)


def test_density_report_skips_mc_by_default():
    cfg = preset_cfg("example1")
    curve = _moment_curve("example1", 1)
    rep = moment_report(cfg.problem, cfg.x, cfg.t, 1, curve)
    assert rep.mean_mc is None and rep.var_mc is None
