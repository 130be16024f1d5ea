"""Mean and variance of the truncated solution, from curves and from draws.

The density route integrates u*f and u^2*f with the trapezoid rule on the
curve's own grid, so the reported variance inherits the grid's window: what
lies outside the grid is neither seen here nor pretended to be.  The sampling
route is the independent check, with jackknife standard errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .density import DensityCurve
from .errors import MassDeficit
from .distributions import as_rng
from .problem import HeatProblem
from .series import sample_uN_values


@dataclass
class MomentReport:
    """One table row: order, density-based moments, sampling-based moments."""

    N: int
    mean_density: float
    var_density: float
    grid_mass: float
    mean_mc: Optional[float] = None
    mean_mc_se: Optional[float] = None
    var_mc: Optional[float] = None
    var_mc_se: Optional[float] = None


def moments_from_density(curve: DensityCurve) -> Tuple[float, float]:
    """Trapezoid mean and variance of a density curve on its grid.

    Raises MassDeficit when the grid holds less than 0.98 of the probability
    mass -- moments of a badly clipped curve are not worth reporting.
    """
    mass = curve.grid_mass()
    if mass < 0.98:
        raise MassDeficit(
            f"grid mass {mass:.6f} < 0.98; widen the grid before asking for "
            f"moments")
    u, f = curve.u_grid, curve.values
    mean = float(np.trapezoid(u * f, u))
    second = float(np.trapezoid(u * u * f, u))
    return mean, second - mean * mean


def _jackknife_mean_var(x: np.ndarray) -> Tuple[float, float, float, float]:
    """(mean, se_mean, var, se_var) with delete-one jackknife errors.

    The leave-one-out variance estimates are computed in closed form from the
    power sums, so the whole thing is a single vectorized pass.
    """
    m = x.size
    s1 = float(np.sum(x))
    s2 = float(np.sum(x * x))
    mean = s1 / m
    var = s2 / m - mean * mean
    # unbiased sample variance and its leave-one-out values
    loo_mean = (s1 - x) / (m - 1)
    loo_var = (s2 - x * x) / (m - 1) - loo_mean ** 2
    se_mean = float(np.sqrt((m - 1) / m * np.sum((loo_mean - np.mean(loo_mean)) ** 2)))
    se_var = float(np.sqrt((m - 1) / m * np.sum((loo_var - np.mean(loo_var)) ** 2)))
    return mean, se_mean, var, se_var


def moments_mc(p: HeatProblem, x: float, t: float, N: int, samples: int,
               rng: Union[int, np.random.Generator, None] = None,
               ) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """((mean, se), (variance, se)) from direct series draws of u_N(x, t)."""
    if samples < 10_000:
        raise ValueError(f"need samples >= 10000 for stable errors, got {samples}")
    draws = sample_uN_values(p, x, t, N, samples, as_rng(rng))
    mean, se_mean, var, se_var = _jackknife_mean_var(draws)
    return (mean, se_mean), (var, se_var)


def moment_report(p: HeatProblem, x: float, t: float, N: int,
                  curve: DensityCurve, mc_samples: Optional[int] = None,
                  rng: Union[int, np.random.Generator, None] = None,
                  ) -> MomentReport:
    """Bundle density moments (and, optionally, MC moments) for one order."""
    mean_d, var_d = moments_from_density(curve)
    report = MomentReport(N=N, mean_density=mean_d, var_density=var_d,
                          grid_mass=curve.grid_mass())
    if mc_samples is not None:
        (mm, mse), (vv, vse) = moments_mc(p, x, t, N, mc_samples, rng)
        report.mean_mc, report.mean_mc_se = mm, mse
        report.var_mc, report.var_mc_se = vv, vse
    return report
