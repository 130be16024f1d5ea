"""Karhunen-Loeve representation of the canonical initial condition on [0,1].

The process is psi(y) = sum_j sqrt(2 nu_j) sin(j pi y) xi_j with a closed-form
eigenvalue rule nu_j and i.i.d. standardized coefficients xi_j.  The sine
basis is fixed; eigenvalue rules must certify a convergent tail so the L2 norm
sqrt(sum nu_j) can be computed to 1e-8.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Union

import numpy as np

from .distributions import ScalarDistribution, ScaledShifted, as_rng
from .errors import DegenerateCoefficient

_L2_TAIL_TOL = 1e-8


# ---------- eigenvalue rules ----------


class EigenvalueRule:
    """Closed-form map j -> nu_j >= 0 with a certified convergent tail."""

    name = "abstract"

    def nu(self, j):
        raise NotImplementedError

    def tail_bound(self, j_from: int) -> float:
        """Upper bound on sum_{j > j_from} nu_j."""
        raise NotImplementedError

    def total(self, tol: float = _L2_TAIL_TOL) -> float:
        """sum_j nu_j, partial sum plus a tail below tol."""
        j_stop = 1
        while self.tail_bound(j_stop) > tol:
            j_stop *= 2
            if j_stop > 10 ** 9:
                raise ValueError(f"{self.name}: tail will not certify below {tol}")
        js = np.arange(1, j_stop + 1, dtype=float)
        return float(np.sum(self.nu(js)))


class BrownianBridge(EigenvalueRule):
    """nu_j = 1/(pi^2 j^2): eigenvalues of the standard Brownian bridge."""

    name = "brownian_bridge"

    def nu(self, j):
        ja = np.asarray(j, dtype=float)
        return 1.0 / (np.pi ** 2 * ja ** 2)

    def tail_bound(self, j_from):
        return 1.0 / (np.pi ** 2 * j_from)

    def total(self, tol=_L2_TAIL_TOL):
        return 1.0 / 6.0  # sum 1/j^2 = pi^2/6 exactly


class LogDamped(EigenvalueRule):
    """nu_j = 1/(j^3 (1 + log j))."""

    name = "log_damped"

    def nu(self, j):
        ja = np.asarray(j, dtype=float)
        return 1.0 / (ja ** 3 * (1.0 + np.log(ja)))

    def tail_bound(self, j_from):
        # sum_{j>J} <= 1/(1+log J) * int_J^inf dj/j^3 = 1/((1+log J) 2 J^2)
        return 1.0 / ((1.0 + math.log(j_from)) * 2.0 * j_from ** 2)


class ExplicitEigenvalues(EigenvalueRule):
    """Finite list of eigenvalues; zero beyond the list."""

    name = "explicit"

    def __init__(self, values: Sequence[float]):
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("explicit eigenvalue list must be a nonempty 1-d sequence")
        if np.any(vals < 0.0):
            raise ValueError("eigenvalues must be nonnegative")
        self.values = vals

    def nu(self, j):
        ja = np.asarray(j, dtype=int)
        out = np.where((ja >= 1) & (ja <= self.values.size),
                       self.values[np.clip(ja - 1, 0, self.values.size - 1)], 0.0)
        if np.isscalar(j) or (isinstance(j, np.ndarray) and j.ndim == 0):
            return float(out)
        return out

    def tail_bound(self, j_from):
        if j_from >= self.values.size:
            return 0.0
        return float(np.sum(self.values[j_from:]))

    def total(self, tol=_L2_TAIL_TOL):
        return float(np.sum(self.values))


# ---------- the process ----------


class KLProcess:
    """Sine-basis KL process with i.i.d. standardized coefficients.

    Parameters
    ----------
    eigenvalue_rule : EigenvalueRule
        Closed-form nu_j generator with tail certificate.
    coeff_law : ScalarDistribution
        Law of the xi_j; must have mean 0 and variance 1.  Verified from the
        law's own exact moments and by a seeded 10^6-draw Monte Carlo check.
    truncation_default : int
        Series length used for path plotting when none is given.
    """

    def __init__(self, eigenvalue_rule: EigenvalueRule,
                 coeff_law: ScalarDistribution,
                 truncation_default: int = 200,
                 mc_check: bool = True):
        if truncation_default < 1:
            raise ValueError("truncation_default must be >= 1")
        self.rule = eigenvalue_rule
        self.coeff_law = coeff_law
        self.truncation_default = int(truncation_default)
        self._check_standardized(mc_check)

    def _check_standardized(self, mc_check: bool):
        m, v = self.coeff_law.mean(), self.coeff_law.var()
        if abs(m) > 1e-9 or abs(v - 1.0) > 1e-9:
            raise ValueError(
                f"coefficient law must be standardized, got mean {m}, var {v}")
        if not mc_check:
            return
        draws = self.coeff_law.sample(np.random.default_rng(0x5EED), 1_000_000)
        se_mean = np.std(draws) / 1000.0
        if abs(np.mean(draws)) > 3.0 * se_mean:
            raise ValueError("coefficient law sampler violates mean 0 (3 sigma)")
        s2 = np.var(draws)
        se_var = math.sqrt(max(np.mean((draws - np.mean(draws)) ** 4) - s2 * s2, 0.0)
                           / draws.size)
        if abs(s2 - 1.0) > 3.0 * max(se_var, 1e-3):
            raise ValueError("coefficient law sampler violates variance 1 (3 sigma)")

    # ---------- operations ----------

    def eigenvalue(self, j: int) -> float:
        if j < 1:
            raise ValueError(f"eigenvalue index must be >= 1, got {j}")
        return float(self.rule.nu(j))

    def fourier_coeff_law(self, n: int) -> ScalarDistribution:
        """Law of the n-th random Fourier coefficient sqrt(2 nu_n) xi_n."""
        nu_n = self.eigenvalue(n)
        if nu_n == 0.0:
            raise DegenerateCoefficient(
                f"eigenvalue nu_{n} = 0: coefficient is constant, no density")
        return ScaledShifted(self.coeff_law, math.sqrt(2.0 * nu_n), 0.0)

    def sample_coeffs(self, N: int, rng: Union[int, np.random.Generator],
                      count: Optional[int] = None) -> np.ndarray:
        """Draws of (A_1..A_N); shape (N,) or (count, N)."""
        if N < 1:
            raise ValueError("N must be >= 1")
        gen = as_rng(rng)
        size = N if count is None else (count, N)
        xi = np.asarray(self.coeff_law.sample(gen, np.prod(np.atleast_1d(size))))
        xi = xi.reshape(size)
        scale = np.sqrt(2.0 * self.rule.nu(np.arange(1, N + 1, dtype=float)))
        return xi * scale

    def sample_path(self, y_grid, J: Optional[int] = None,
                    rng: Union[int, np.random.Generator, None] = None) -> np.ndarray:
        """One path of psi_J on y_grid, from a single shared coefficient draw."""
        y = np.asarray(y_grid, dtype=float)
        if np.any((y < 0.0) | (y > 1.0)):
            raise ValueError("path grid must lie in [0, 1]")
        J = self.truncation_default if J is None else int(J)
        coeffs = self.sample_coeffs(J, as_rng(rng))
        return self._synthesize(y, coeffs)

    @staticmethod
    def _synthesize(y: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        J = coeffs.shape[-1]
        js = np.arange(1, J + 1, dtype=float)
        basis = np.sin(np.outer(y, js) * np.pi)
        # the sine basis vanishes identically at the endpoints; pin them so
        # rounding in sin(j*pi) cannot leak through
        basis[(y == 0.0) | (y == 1.0), :] = 0.0
        return basis @ coeffs

    def psi_l2_norm(self) -> float:
        """L2([0,1] x Omega) norm of psi: sqrt(sum_j nu_j)."""
        return math.sqrt(self.rule.total(_L2_TAIL_TOL))

    def __repr__(self):
        return (f"KLProcess({self.rule.name}, {self.coeff_law!r}, "
                f"J={self.truncation_default})")


EIGENVALUE_RULES = {
    "brownian_bridge": BrownianBridge,
    "log_damped": LogDamped,
    "explicit": ExplicitEigenvalues,
}
