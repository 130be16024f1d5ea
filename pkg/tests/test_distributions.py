import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose
from scipy import integrate

import oracles
from randheat import (
    Beta, DomainError, Gamma, Normal, Quartic, ScaledShifted, Triangular,
    TruncatedExponential, Uniform, UNAVAILABLE, is_unavailable,
)

RNG = np.random.default_rng(0xD157)


def _laws():
    return [
        Uniform(1.0, 2.0),
        Normal(0.0, 1.0),
        Normal(2.0, 1.0),
        Gamma(2.0, 1.0),
        Gamma(0.4, 1.0),
        Beta(2.0, 3.0),
        Triangular(-5.0, -3.0, -2.0),
        TruncatedExponential(0.5, 3.0, 5.0),
        Quartic(),
        ScaledShifted(Normal(0.0, 1.0), 2.0, -1.0),
        ScaledShifted(Quartic(), 0.5, 3.0),
    ]


@pytest.mark.parametrize("law", _laws(), ids=lambda d: repr(d))
def test_pdf_integrates_to_one(law):
    lo, hi = law.support
    mass, _ = integrate.quad(lambda x: float(law.pdf(x)), lo, hi, limit=400)
    assert abs(mass - 1.0) < 1e-6


@pytest.mark.parametrize("law", _laws(), ids=lambda d: repr(d))
def test_mean_var_match_numeric(law):
    # full-support integrals: the quartic law's x^-4 tails lose ~1e-3 of the
    # second moment to any quantile-based truncation
    lo, hi = law.support
    m, _ = integrate.quad(lambda x: x * float(law.pdf(x)), lo, hi, limit=400)
    s, _ = integrate.quad(lambda x: x * x * float(law.pdf(x)), lo, hi,
                          limit=400)
    assert_allclose(law.mean(), m, rtol=2e-6, atol=2e-6)
    assert_allclose(law.var(), s - m * m, rtol=2e-5, atol=2e-6)


@pytest.mark.parametrize("law", _laws(), ids=lambda d: repr(d))
def test_quantile_inverts_cdf(law):
    for q in (0.01, 0.2, 0.5, 0.77, 0.99):
        x = law.quantile(q)
        assert_allclose(law.cdf(x), q, atol=1e-9)


@pytest.mark.parametrize("law", _laws(), ids=lambda d: repr(d))
def test_sampler_matches_moments(law):
    draws = law.sample(np.random.default_rng(7), 200_000)
    se = np.std(draws) / math.sqrt(draws.size)
    if np.isfinite(law.var()):  # quartic has finite variance but slow CLT tails
        assert abs(np.mean(draws) - law.mean()) < 5.0 * max(se, 1e-3)


@pytest.mark.parametrize("law", _laws(), ids=lambda d: repr(d))
def test_effective_support_holds_mass(law):
    lo, hi = law.effective_support(1e-6)
    assert law.cdf(lo) <= 1e-6 + 1e-12
    assert law.cdf(hi) >= 1.0 - 1e-6 - 1e-12


# ---------- the heavy-tailed standardized coefficient law ----------

def test_quartic_pdf_cdf_match_oracle():
    xs = np.linspace(-8.0, 8.0, 41)
    q = Quartic()
    assert_allclose(q.pdf(xs), oracles.quartic_pdf(xs), rtol=1e-12)
    assert_allclose(q.cdf(xs), oracles.quartic_cdf(xs), rtol=0, atol=1e-12)
    # the closed-form CDF itself against raw quadrature at a few points
    for x in (-3.0, -0.5, 0.0, 1.7):
        assert_allclose(oracles.quartic_cdf(x), oracles.quartic_cdf_numeric(x),
                        atol=1e-9)


def test_quartic_is_standardized():
    q = Quartic()
    assert q.mean() == 0.0
    assert_allclose(q.var(), 1.0, rtol=1e-12)


def test_quartic_quantile_matches_root_finding():
    q = Quartic()
    for p in (0.05, 0.31, 0.5, 0.93):
        assert_allclose(q.quantile(p), oracles.quartic_ppf(p), atol=1e-8)


def test_quartic_mgf_unavailable():
    # E[e^{s xi}] diverges for every s != 0: polynomial tails
    out = Quartic().mgf(0.3)
    assert is_unavailable(out) or out == UNAVAILABLE


# ---------- mgf behaviour used by the hypothesis checks ----------

def test_uniform_mgf_closed_form():
    u = Uniform(1.0, 2.0)
    for lam in (-3.0, -0.5, 0.0, 0.5, 2.0):
        assert_allclose(u.mgf(lam), oracles.uniform_mgf(1.0, 2.0, lam),
                        rtol=1e-12)


def test_gamma_mgf_domain():
    g = Gamma(2.0, 1.5)
    assert_allclose(g.mgf(1.0), (1.5 / 0.5) ** 2, rtol=1e-12)
    with pytest.raises(DomainError):
        g.mgf(1.5)
    with pytest.raises(DomainError):
        g.mgf(2.0)


def test_scaled_shifted_mgf_transforms():
    base = Gamma(2.0, 1.0)
    law = ScaledShifted(base, 3.0, 1.0)  # 3X + 1
    lam = 0.2
    assert_allclose(law.mgf(lam), math.exp(lam) * base.mgf(3.0 * lam),
                    rtol=1e-12)


# ---------- sup-density and Lipschitz metadata ----------

def test_sup_density_values():
    assert_allclose(Normal(0.0, 1.0).sup_density(), 1.0 / math.sqrt(2 * math.pi),
                    rtol=1e-12)
    assert_allclose(Quartic().sup_density(), math.sqrt(2.0) / math.pi,
                    rtol=1e-12)
    assert math.isinf(Gamma(0.4, 1.0).sup_density())
    assert_allclose(Uniform(1.0, 2.0).sup_density(), 1.0, rtol=1e-12)


def test_normal_lipschitz_exact():
    # max |f'| of N(0,s2) is attained at x = +-s: 1/(s^2 sqrt(2 pi e))
    s2 = 1.0
    want = 1.0 / (s2 * math.sqrt(2.0 * math.pi * math.e))
    assert_allclose(Normal(0.0, s2).lipschitz_constant(), want, rtol=1e-6)


def test_gamma_lipschitz_shape_below_two_unavailable():
    assert is_unavailable(Gamma(1.5, 1.0).lipschitz_constant())
    assert np.isfinite(Gamma(2.5, 1.0).lipschitz_constant())


def test_scaled_shifted_roundtrip_sampling():
    law = ScaledShifted(Normal(0.0, 1.0), 2.0, -1.0)
    draws = law.sample(np.random.default_rng(11), 100_000)
    assert abs(np.mean(draws) - (-1.0)) < 0.03
    assert abs(np.var(draws) - 4.0) < 0.1


def test_truncated_exponential_validates_bounds():
    with pytest.raises(Exception):
        TruncatedExponential(0.5, 5.0, 3.0)
    with pytest.raises(Exception):
        TruncatedExponential(0.5, -1.0, 3.0)


def test_truncexp_moments_match_oracle():
    law = TruncatedExponential(0.5, 3.0, 5.0)
    m, v = oracles.truncexp_mean_var(0.5, 3.0, 5.0)
    assert_allclose(law.mean(), m, rtol=1e-10)
    assert_allclose(law.var(), v, rtol=1e-10)


def test_triangular_moments_match_oracle():
    law = Triangular(-5.0, -3.0, -2.0)
    m, v = oracles.triangular_mean_var(-5.0, -3.0, -2.0)
    assert_allclose(law.mean(), m, rtol=1e-12)
    assert_allclose(law.var(), v, rtol=1e-12)


@given(st.floats(-20.0, 20.0), st.floats(0.1, 5.0), st.floats(-5.0, 5.0))
@settings(max_examples=60, deadline=None)
def test_scaled_shifted_cdf_is_consistent(x, c, d):
    base = Normal(0.0, 1.0)
    law = ScaledShifted(base, c, d)
    assert_allclose(law.cdf(x), base.cdf((x - d) / c), atol=1e-12)


@given(st.floats(0.02, 0.98))
@settings(max_examples=40, deadline=None)
def test_quartic_quantile_cdf_roundtrip(q):
    x = Quartic().quantile(q)
    assert abs(Quartic().cdf(x) - q) < 1e-9
