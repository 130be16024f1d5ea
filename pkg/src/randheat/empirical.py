"""Empirical distributions of u_N from direct series sampling.

This is the independent validator for the analytic density machinery: draw
the truncated series directly, then compare cumulative distributions with a
Kolmogorov-Smirnov distance.  Nothing here shares code with the quadrature
path beyond the series evaluator itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .density import DensityCurve
from .distributions import as_rng
from .errors import RangeMismatch
from .problem import HeatProblem
from .series import sample_uN_values

_HIST_BINS = 200


@dataclass
class EmpiricalDistribution:
    sorted_samples: np.ndarray
    bin_edges: np.ndarray
    counts: np.ndarray
    seed: Optional[int]
    sample_count: int

    def cdf(self, x) -> np.ndarray:
        """Right-continuous empirical CDF at x."""
        xa = np.asarray(x, dtype=float)
        return np.searchsorted(self.sorted_samples, xa, side="right") / self.sample_count


def build_empirical(p: HeatProblem, x: float, t: float, N: int, samples: int,
                    rng: Union[int, np.random.Generator, None] = None,
                    ) -> EmpiricalDistribution:
    if samples < 10_000:
        raise ValueError(f"need samples >= 10000, got {samples}")
    seed = rng if isinstance(rng, int) else None
    draws = np.sort(sample_uN_values(p, x, t, N, samples, as_rng(rng)))
    counts, edges = np.histogram(draws, bins=_HIST_BINS)
    return EmpiricalDistribution(sorted_samples=draws, bin_edges=edges,
                                 counts=counts, seed=seed,
                                 sample_count=samples)


def curve_cdf(curve: DensityCurve) -> np.ndarray:
    """Cumulative trapezoid integral of the curve over its own grid."""
    u, f = curve.u_grid, curve.values
    inc = 0.5 * (f[1:] + f[:-1]) * np.diff(u)
    return np.concatenate(([0.0], np.cumsum(inc)))


def ks_distance(emp: EmpiricalDistribution, curve: DensityCurve) -> float:
    """sup_x |empirical CDF - analytic CDF| over the sample points.

    The analytic CDF is the trapezoid CDF of the curve, interpolated linearly
    between grid points.  Samples outside the curve's grid beyond a 0.1%
    allowance raise RangeMismatch: with that many strays the comparison says
    more about the grid than about the density.
    """
    s = emp.sorted_samples
    m = emp.sample_count
    lo, hi = curve.u_grid[0], curve.u_grid[-1]
    outside = int(np.sum((s < lo) | (s > hi)))
    if outside > 0.001 * m:
        raise RangeMismatch(
            f"{outside} of {m} samples fall outside the curve grid "
            f"[{lo:g}, {hi:g}] (allowance 0.1%)")
    cdf = curve_cdf(curve)
    fa = np.interp(s, curve.u_grid, cdf, left=0.0, right=float(cdf[-1]))
    ranks = np.arange(1, m + 1) / m
    d_plus = float(np.max(ranks - fa))
    d_minus = float(np.max(fa - (np.arange(m) / m)))
    return max(d_plus, d_minus)
