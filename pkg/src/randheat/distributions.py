"""Univariate distribution toolkit.

Closed-form densities, samplers, moment generating functions and the density
metadata (sup norm, Lipschitz constant) needed by the density engine and the
convergence bound.  The change-of-variables rule for an affine map lives in
:class:`ScaledShifted`; everything downstream (Fourier coefficient laws,
diffusion rescaling, boundary terms) is expressed through it.

All distributions are immutable after construction and validate their
parameters eagerly.  Sampling takes a ``numpy.random.Generator`` (or a seed)
so that every draw is reproducible.
"""

from __future__ import annotations

import math
from typing import Optional, Union

import numpy as np
from scipy import special
from scipy import stats

from .errors import UNAVAILABLE, DomainError

ArrayLike = Union[float, np.ndarray]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def as_rng(rng: Union[int, np.random.Generator, None]) -> np.random.Generator:
    """Coerce a seed or Generator into a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _expm1_over(z: ArrayLike) -> ArrayLike:
    """expm1(z)/z, continuous through z=0."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < 1e-12
    safe = np.where(small, 1.0, z)
    return np.where(small, 1.0 + z / 2.0, np.expm1(safe) / safe)


def _maybe_scalar(x, arr):
    if np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0):
        return float(np.asarray(arr).reshape(()))
    return arr


# ---------- base class ----------


class ScalarDistribution:
    """A named univariate law with density, sampler and moment metadata.

    Subclasses provide closed forms for ``pdf``/``cdf``/``quantile``, exact
    ``mean``/``var``, the MGF where one exists, the sup of the density, and a
    Lipschitz constant for the density where it has a bounded derivative
    (``UNAVAILABLE`` otherwise — e.g. densities with jump discontinuities).
    """

    family: str = "abstract"

    # closed-form interface -------------------------------------------------
    def pdf(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def cdf(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def quantile(self, q: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def sample(self, rng, size: Optional[int] = None):
        raise NotImplementedError

    def mgf(self, lam: float):
        """E[exp(lam X)] in closed form; 1.0 at lam=0 for every family.

        Returns UNAVAILABLE when no closed form exists; raises DomainError for
        arguments outside the MGF's domain of finiteness.
        """
        raise NotImplementedError

    def mean(self) -> float:
        raise NotImplementedError

    def var(self) -> float:
        raise NotImplementedError

    @property
    def support(self) -> tuple:
        raise NotImplementedError

    def sup_density(self) -> float:
        raise NotImplementedError

    def lipschitz_constant(self):
        return UNAVAILABLE

    # derived helpers -------------------------------------------------------
    def std(self) -> float:
        return math.sqrt(self.var())

    def effective_support(self, mass_tol: float = 1e-8) -> tuple:
        """Finite interval carrying all but ``mass_tol`` of mass per side.

        Equals the exact support when it is already bounded; otherwise the
        [mass_tol, 1-mass_tol] quantile range.
        """
        lo, hi = self.support
        if not math.isfinite(lo):
            lo = float(self.quantile(mass_tol))
        if not math.isfinite(hi):
            hi = float(self.quantile(1.0 - mass_tol))
        return lo, hi

    def is_bounded(self) -> bool:
        lo, hi = self.support
        return math.isfinite(lo) and math.isfinite(hi)

    def __repr__(self):
        return f"{type(self).__name__}({self._param_str()})"

    def _param_str(self) -> str:
        return ""


# ---------- concrete families ----------


class Uniform(ScalarDistribution):
    """Uniform law on [a, b]."""

    family = "uniform"

    def __init__(self, a: float, b: float):
        a, b = float(a), float(b)
        if not (a < b):
            raise ValueError(f"Uniform requires a < b, got ({a}, {b})")
        self.a, self.b = a, b
        self.width = b - a

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        out = np.where((xa >= self.a) & (xa <= self.b), 1.0 / self.width, 0.0)
        return _maybe_scalar(x, out)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        out = np.clip((xa - self.a) / self.width, 0.0, 1.0)
        return _maybe_scalar(x, out)

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        return _maybe_scalar(q, self.a + qa * self.width)

    def sample(self, rng, size=None):
        return as_rng(rng).uniform(self.a, self.b, size)

    def mgf(self, lam):
        lam = float(lam)
        if lam == 0.0:
            return 1.0
        # (e^{lam b} - e^{lam a}) / (lam (b - a)), in cancellation-safe form
        return float(math.exp(lam * self.a) * _expm1_over(lam * self.width))

    def mean(self):
        return 0.5 * (self.a + self.b)

    def var(self):
        return self.width ** 2 / 12.0

    @property
    def support(self):
        return (self.a, self.b)

    def sup_density(self):
        return 1.0 / self.width

    # density has jumps at both endpoints: not Lipschitz on R
    def lipschitz_constant(self):
        return UNAVAILABLE

    def _param_str(self):
        return f"{self.a:g}, {self.b:g}"


class Normal(ScalarDistribution):
    """Normal law with mean mu and variance sigma2."""

    family = "normal"

    def __init__(self, mu: float, sigma2: float):
        mu, sigma2 = float(mu), float(sigma2)
        if sigma2 <= 0.0:
            raise ValueError(f"Normal requires sigma2 > 0, got {sigma2}")
        self.mu, self.sigma2 = mu, sigma2
        self.sigma = math.sqrt(sigma2)

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        z = (xa - self.mu) / self.sigma
        out = np.exp(-0.5 * z * z) / (self.sigma * _SQRT_2PI)
        return _maybe_scalar(x, out)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _maybe_scalar(x, special.ndtr((xa - self.mu) / self.sigma))

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        return _maybe_scalar(q, self.mu + self.sigma * special.ndtri(qa))

    def sample(self, rng, size=None):
        # generator's ziggurat normal stream
        return as_rng(rng).normal(self.mu, self.sigma, size)

    def mgf(self, lam):
        lam = float(lam)
        return math.exp(self.mu * lam + 0.5 * self.sigma2 * lam * lam)

    def mean(self):
        return self.mu

    def var(self):
        return self.sigma2

    @property
    def support(self):
        return (-math.inf, math.inf)

    def sup_density(self):
        return 1.0 / (self.sigma * _SQRT_2PI)

    def lipschitz_constant(self):
        # max |f'| attained at mu +- sigma: e^{-1/2} / (sigma^2 sqrt(2 pi))
        return math.exp(-0.5) / (self.sigma2 * _SQRT_2PI)

    def _param_str(self):
        return f"{self.mu:g}, {self.sigma2:g}"


class Gamma(ScalarDistribution):
    """Gamma law with shape r and rate s (density ~ x^{r-1} e^{-s x})."""

    family = "gamma"

    def __init__(self, shape: float, rate: float):
        shape, rate = float(shape), float(rate)
        if shape <= 0.0 or rate <= 0.0:
            raise ValueError(f"Gamma requires shape, rate > 0, got ({shape}, {rate})")
        self.shape, self.rate = shape, rate
        self._dist = stats.gamma(shape, scale=1.0 / rate)

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        out = np.where(xa > 0.0, self._dist.pdf(np.maximum(xa, 1e-300)), 0.0)
        return _maybe_scalar(x, out)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _maybe_scalar(x, self._dist.cdf(np.maximum(xa, 0.0)))

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        return _maybe_scalar(q, self._dist.ppf(qa))

    def sample(self, rng, size=None):
        # numpy's gamma variates use shape-based rejection sampling
        return as_rng(rng).gamma(self.shape, 1.0 / self.rate, size)

    def mgf(self, lam):
        lam = float(lam)
        if lam == 0.0:
            return 1.0
        if lam >= self.rate:
            raise DomainError(
                f"Gamma MGF diverges for lam >= rate ({lam} >= {self.rate})")
        return (1.0 - lam / self.rate) ** (-self.shape)

    def mean(self):
        return self.shape / self.rate

    def var(self):
        return self.shape / self.rate ** 2

    @property
    def support(self):
        return (0.0, math.inf)

    def sup_density(self):
        if self.shape < 1.0:
            return math.inf  # blows up at the origin
        if self.shape == 1.0:
            return self.rate
        mode = (self.shape - 1.0) / self.rate
        return float(self._dist.pdf(mode))

    def lipschitz_constant(self):
        # f' ~ x^{shape-2} near 0: unbounded derivative for shape < 2
        if self.shape < 2.0:
            return UNAVAILABLE
        return _grid_search_lipschitz(self)

    def _param_str(self):
        return f"shape={self.shape:g}, rate={self.rate:g}"


class Beta(ScalarDistribution):
    """Beta(a, b) on [0, 1]."""

    family = "beta"

    def __init__(self, a: float, b: float):
        a, b = float(a), float(b)
        if a <= 0.0 or b <= 0.0:
            raise ValueError(f"Beta requires a, b > 0, got ({a}, {b})")
        self.a, self.b = a, b
        self._dist = stats.beta(a, b)

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        inside = (xa >= 0.0) & (xa <= 1.0)
        out = np.where(inside, self._dist.pdf(np.clip(xa, 0.0, 1.0)), 0.0)
        return _maybe_scalar(x, out)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _maybe_scalar(x, self._dist.cdf(np.clip(xa, 0.0, 1.0)))

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        return _maybe_scalar(q, self._dist.ppf(qa))

    def sample(self, rng, size=None):
        return as_rng(rng).beta(self.a, self.b, size)

    def mgf(self, lam):
        lam = float(lam)
        if lam == 0.0:
            return 1.0
        # confluent hypergeometric 1F1(a; a+b; lam)
        return float(special.hyp1f1(self.a, self.a + self.b, lam))

    def mean(self):
        return self.a / (self.a + self.b)

    def var(self):
        s = self.a + self.b
        return self.a * self.b / (s * s * (s + 1.0))

    @property
    def support(self):
        return (0.0, 1.0)

    def sup_density(self):
        if self.a < 1.0 or self.b < 1.0:
            return math.inf
        if self.a == 1.0 and self.b == 1.0:
            return 1.0
        if self.a == 1.0:
            return float(self._dist.pdf(0.0))
        if self.b == 1.0:
            return float(self._dist.pdf(1.0))
        mode = (self.a - 1.0) / (self.a + self.b - 2.0)
        return float(self._dist.pdf(mode))

    def lipschitz_constant(self):
        # bounded density derivative requires a, b >= 2 (endpoints otherwise)
        if self.a < 2.0 or self.b < 2.0:
            return UNAVAILABLE
        return _grid_search_lipschitz(self)

    def _param_str(self):
        return f"{self.a:g}, {self.b:g}"


class Triangular(ScalarDistribution):
    """Triangular law with support [lo, hi] and peak at mode."""

    family = "triangular"

    def __init__(self, lo: float, mode: float, hi: float):
        lo, mode, hi = float(lo), float(mode), float(hi)
        if not (lo <= mode <= hi) or lo >= hi:
            raise ValueError(
                f"Triangular requires lo <= mode <= hi with lo < hi, got "
                f"({lo}, {mode}, {hi})")
        self.lo, self.mode, self.hi = lo, mode, hi

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        lo, m, hi = self.lo, self.mode, self.hi
        up = 2.0 * (xa - lo) / ((hi - lo) * (m - lo)) if m > lo else np.inf
        dn = 2.0 * (hi - xa) / ((hi - lo) * (hi - m)) if m < hi else np.inf
        out = np.where(xa < m, up, dn)
        out = np.where((xa < lo) | (xa > hi), 0.0, out)
        return _maybe_scalar(x, out)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        lo, m, hi = self.lo, self.mode, self.hi
        left = (xa - lo) ** 2 / ((hi - lo) * (m - lo)) if m > lo else 1.0
        right = 1.0 - (hi - xa) ** 2 / ((hi - lo) * (hi - m)) if m < hi else 1.0
        out = np.where(xa < m, left, right)
        out = np.where(xa <= lo, 0.0, np.where(xa >= hi, 1.0, out))
        return _maybe_scalar(x, out)

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        lo, m, hi = self.lo, self.mode, self.hi
        split = (m - lo) / (hi - lo)
        left = lo + np.sqrt(np.maximum(qa, 0.0) * (hi - lo) * (m - lo))
        right = hi - np.sqrt(np.maximum(1.0 - qa, 0.0) * (hi - lo) * (hi - m))
        return _maybe_scalar(q, np.where(qa < split, left, right))

    def sample(self, rng, size=None):
        # inverse-CDF transform of a single uniform stream
        u = as_rng(rng).random(size)
        return self.quantile(u)

    def mgf(self, lam):
        lam = float(lam)
        lo, m, hi = self.lo, self.mode, self.hi
        if abs(lam) * (hi - lo) < 1e-4 or m == lo or m == hi:
            # exact panel-wise polynomial-times-exponential quadrature
            return _panel_mgf(self, lam, [lo, m, hi])
        num = ((hi - m) * math.exp(lam * lo) - (hi - lo) * math.exp(lam * m)
               + (m - lo) * math.exp(lam * hi))
        return 2.0 * num / ((hi - lo) * (m - lo) * (hi - m) * lam * lam)

    def mean(self):
        return (self.lo + self.mode + self.hi) / 3.0

    def var(self):
        lo, m, hi = self.lo, self.mode, self.hi
        return (lo * lo + m * m + hi * hi - lo * m - lo * hi - m * hi) / 18.0

    @property
    def support(self):
        return (self.lo, self.hi)

    def sup_density(self):
        return 2.0 / (self.hi - self.lo)

    def lipschitz_constant(self):
        # piecewise linear and continuous: constant is the steeper slope
        lo, m, hi = self.lo, self.mode, self.hi
        slopes = []
        if m > lo:
            slopes.append(2.0 / ((hi - lo) * (m - lo)))
        if m < hi:
            slopes.append(2.0 / ((hi - lo) * (hi - m)))
        if m == lo or m == hi:
            return UNAVAILABLE  # degenerate wedge has a jump at the peak
        return max(slopes)

    def _param_str(self):
        return f"{self.lo:g}, {self.mode:g}, {self.hi:g}"


class TruncatedExponential(ScalarDistribution):
    """Exponential(rate) conditioned on the window [lo, hi]."""

    family = "truncated_exponential"

    def __init__(self, rate: float, lo: float, hi: float):
        rate, lo, hi = float(rate), float(lo), float(hi)
        if rate <= 0.0:
            raise ValueError(f"TruncatedExponential requires rate > 0, got {rate}")
        if not (0.0 <= lo < hi):
            raise ValueError(
                f"TruncatedExponential requires 0 <= lo < hi, got ({lo}, {hi})")
        self.rate, self.lo, self.hi = rate, lo, hi
        self.width = hi - lo
        # P(lo <= Exp(rate) <= hi), kept in log-safe factored form
        self._tail_mass = -math.expm1(-rate * self.width)  # 1 - e^{-rate w}

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        inside = (xa >= self.lo) & (xa <= self.hi)
        val = self.rate * np.exp(-self.rate * (xa - self.lo)) / self._tail_mass
        out = np.where(inside, val, 0.0)
        return _maybe_scalar(x, out)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        val = -np.expm1(-self.rate * (xa - self.lo)) / self._tail_mass
        out = np.clip(val, 0.0, 1.0)
        out = np.where(xa <= self.lo, 0.0, np.where(xa >= self.hi, 1.0, out))
        return _maybe_scalar(x, out)

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        out = self.lo - np.log1p(-qa * self._tail_mass) / self.rate
        return _maybe_scalar(q, out)

    def sample(self, rng, size=None):
        u = as_rng(rng).random(size)
        return self.quantile(u)

    def mgf(self, lam):
        lam = float(lam)
        z = (lam - self.rate) * self.width
        return float(self.rate * self.width * _expm1_over(z)
                     * math.exp(lam * self.lo) / self._tail_mass)

    def mean(self):
        r = self.rate
        anti = lambda b: -(b / r + 1.0 / (r * r)) * math.exp(-r * b)
        z = math.exp(-r * self.lo) - math.exp(-r * self.hi)
        return r * (anti(self.hi) - anti(self.lo)) / z

    def var(self):
        r = self.rate
        anti2 = lambda b: -(b * b / r + 2 * b / (r * r) + 2 / r ** 3) * math.exp(-r * b)
        z = math.exp(-r * self.lo) - math.exp(-r * self.hi)
        m2 = r * (anti2(self.hi) - anti2(self.lo)) / z
        m1 = self.mean()
        return m2 - m1 * m1

    @property
    def support(self):
        return (self.lo, self.hi)

    def sup_density(self):
        return self.rate / self._tail_mass  # value at lo

    def lipschitz_constant(self):
        return UNAVAILABLE  # jump discontinuities at both window edges

    def _param_str(self):
        return f"rate={self.rate:g}, {self.lo:g}, {self.hi:g}"


class Quartic(ScalarDistribution):
    """The heavy-tailed standardized law f(x) = sqrt(2)/(pi (1 + x^4)).

    Zero mean, unit variance, no moment generating function (tails ~ x^{-4});
    CDF in closed form through the arctan/log antiderivative of 1/(1+x^4).
    """

    family = "quartic"

    _SQRT2 = math.sqrt(2.0)

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        return _maybe_scalar(x, self._SQRT2 / (np.pi * (1.0 + xa ** 4)))

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        s2 = self._SQRT2
        g = (np.log((xa * xa + s2 * xa + 1.0) / (xa * xa - s2 * xa + 1.0)) / (4.0 * s2)
             + (np.arctan(s2 * xa + 1.0) + np.arctan(s2 * xa - 1.0)) / (2.0 * s2))
        return _maybe_scalar(x, 0.5 + (s2 / np.pi) * g)

    def quantile(self, q):
        qa = np.atleast_1d(np.asarray(q, dtype=float))
        out = _quartic_ppf(qa, self)
        return _maybe_scalar(q, out if out.shape else float(out))

    def sample(self, rng, size=None):
        u = as_rng(rng).random(size if size is not None else 1)
        out = _quartic_ppf(np.atleast_1d(u), self)
        return out if size is not None else float(out[0])

    def mgf(self, lam):
        if float(lam) == 0.0:
            return 1.0
        return UNAVAILABLE  # E[e^{lam X}] diverges for every lam != 0

    def mean(self):
        return 0.0

    def var(self):
        return 1.0  # sqrt2/pi * int x^2/(1+x^4) dx = sqrt2/pi * pi/sqrt2

    @property
    def support(self):
        return (-math.inf, math.inf)

    def sup_density(self):
        return self._SQRT2 / math.pi

    def lipschitz_constant(self):
        # |f'| = 4 sqrt2 x^3 / (pi (1+x^4)^2) peaks at x^4 = 3/5
        x4 = 0.6
        x3 = x4 ** 0.75
        return 4.0 * self._SQRT2 / math.pi * x3 / (1.0 + x4) ** 2


def _quartic_ppf(q: np.ndarray, law: Quartic) -> np.ndarray:
    """Vectorized quantile of the quartic law from its closed-form CDF.

    Bisection on an analytic bracket (the x^{-3} tail gives the upper bound),
    then a few Newton polish steps with the closed-form pdf.
    """
    out = np.full(q.shape, np.nan)
    out[q <= 0.0] = -np.inf
    out[q >= 1.0] = np.inf
    inner = (q > 0.0) & (q < 1.0)
    if not np.any(inner):
        return out
    qi = q[inner]
    flip = qi < 0.5
    qq = np.where(flip, 1.0 - qi, qi)  # work on the upper half
    tail = 1.0 - qq
    hi = 1.5 * (law._SQRT2 / (3.0 * np.pi * np.maximum(tail, 1e-300))) ** (1.0 / 3.0) + 2.0
    lo = np.zeros_like(qq)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        below = law.cdf(mid) < qq
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    x = 0.5 * (lo + hi)
    for _ in range(3):
        x = x - (law.cdf(x) - qq) / np.maximum(law.pdf(x), 1e-300)
    out[inner] = np.where(flip, -x, x)
    return out


class ScaledShifted(ScalarDistribution):
    """Law of c*X + d for an inner law X; density f((x-d)/c)/|c|."""

    family = "scaled_shifted"

    def __init__(self, inner: ScalarDistribution, c: float, d: float = 0.0):
        c, d = float(c), float(d)
        if c == 0.0:
            raise ValueError("ScaledShifted requires a nonzero scale c")
        self.inner, self.c, self.d = inner, c, d

    def pdf(self, x):
        xa = np.asarray(x, dtype=float)
        out = self.inner.pdf((xa - self.d) / self.c) / abs(self.c)
        return _maybe_scalar(x, out)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        z = (xa - self.d) / self.c
        inner = self.inner.cdf(z)
        out = inner if self.c > 0 else 1.0 - inner
        return _maybe_scalar(x, out)

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        qq = qa if self.c > 0 else 1.0 - qa
        out = self.c * np.asarray(self.inner.quantile(qq)) + self.d
        return _maybe_scalar(q, out)

    def sample(self, rng, size=None):
        return self.c * self.inner.sample(rng, size) + self.d

    def mgf(self, lam):
        lam = float(lam)
        if lam == 0.0:
            return 1.0
        inner = self.inner.mgf(self.c * lam)
        if inner is UNAVAILABLE:
            return UNAVAILABLE
        return math.exp(lam * self.d) * inner

    def mean(self):
        return self.c * self.inner.mean() + self.d

    def var(self):
        return self.c * self.c * self.inner.var()

    @property
    def support(self):
        lo, hi = self.inner.support
        a, b = self.c * lo + self.d, self.c * hi + self.d
        return (a, b) if a <= b else (b, a)

    def sup_density(self):
        return self.inner.sup_density() / abs(self.c)

    def lipschitz_constant(self):
        inner = self.inner.lipschitz_constant()
        if inner is UNAVAILABLE:
            return UNAVAILABLE
        return inner / (self.c * self.c)

    def _param_str(self):
        return f"{self.inner!r}, c={self.c:g}, d={self.d:g}"


# ---------- numeric helpers ----------


def _panel_mgf(dist, lam, knots):
    """E[e^{lam X}] by fixed Gauss-Legendre panels between density knots."""
    xg, wg = np.polynomial.legendre.leggauss(50)
    total = 0.0
    for a, b in zip(knots[:-1], knots[1:]):
        if b <= a:
            continue
        x = 0.5 * (b - a) * xg + 0.5 * (b + a)
        w = 0.5 * (b - a) * wg
        total += float(np.sum(w * np.exp(lam * x) * dist.pdf(x)))
    return total


def _grid_search_lipschitz(dist, step: float = 1e-4):
    """Max |f'| by dense central differences on the effective support."""
    lo, hi = dist.effective_support(1e-10)
    pad = 2.0 * step
    xs = np.arange(lo + pad, hi - pad, step)
    if xs.size < 8:
        return UNAVAILABLE
    f = dist.pdf(xs)
    deriv = np.abs((f[2:] - f[:-2]) / (2.0 * step))
    return float(deriv.max())


FAMILIES = {
    cls.family: cls
    for cls in (Uniform, Normal, Gamma, Beta, Triangular, TruncatedExponential,
                Quartic, ScaledShifted)
}
