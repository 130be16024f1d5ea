"""Density approximation for the heat equation with random diffusivity,
random Fourier initial data and (optionally) random boundary temperatures.

The solution of u_t = alpha^2 u_xx on [L1, L2] with initial profile
phi(x) = A + (x-L1)/(L2-L1) * (B - A) + psi((x-L1)/(L2-L1)) is approximated
by its truncated eigenfunction expansion u_N; this package computes the
probability density of u_N(x, t) either by adaptive quadrature of a smoothed
expectation representation or by Monte Carlo, together with convergence
diagnostics, moment tables and an applicability report for the supporting
convergence theorems.

Entry points:

* :func:`density_uN_det` / :func:`density_uN_random` -- density curves,
* :func:`moments.moment_report` -- mean/variance tables,
* :func:`hypotheses.classify` -- theorem applicability,
* :mod:`randheat.cli` -- the ``randheat`` command.
"""

from .errors import (
    RandHeatError, DomainError, InvalidInterval, OutOfDomain, SingularPoint,
    UnsupportedN, DegenerateCoefficient, MassDeficit, RangeMismatch,
    ConfigError, UNAVAILABLE, is_unavailable,
)
from .distributions import (
    ScalarDistribution, Uniform, Normal, Gamma, Beta, Triangular,
    TruncatedExponential, Quartic, ScaledShifted,
)
from .kl import (
    EigenvalueRule, BrownianBridge, LogDamped, ExplicitEigenvalues, KLProcess,
)
from .problem import (
    BoundaryCondition, Deterministic, Random, as_boundary,
    HeatProblem, CanonicalProblem, SpatialMap,
    canonicalize, boundary_mean_line,
)
from .series import sample_uN_values, sample_vN_values, draw_solution_samples
from .density import (
    Quadrature, ExpectationMC, EngineSettings, DensityCurve,
    density_vN, density_uN_det, density_uN_random, tail_bound,
    default_grid, coverage_grid,
)
from .hypotheses import TheoremReport, classify, check_hip_a, check_hip_a2
from .moments import MomentReport, moments_from_density, moments_mc, moment_report
from .empirical import EmpiricalDistribution, build_empirical, ks_distance
from .config import RunConfig, GridSpec, load_config, preset, PRESET_NAMES

__version__ = "1.0.0"

__all__ = [
    "RandHeatError", "DomainError", "InvalidInterval", "OutOfDomain",
    "SingularPoint", "UnsupportedN", "DegenerateCoefficient", "MassDeficit",
    "RangeMismatch", "ConfigError", "UNAVAILABLE", "is_unavailable",
    "ScalarDistribution", "Uniform", "Normal", "Gamma", "Beta", "Triangular",
    "TruncatedExponential", "Quartic", "ScaledShifted",
    "EigenvalueRule", "BrownianBridge", "LogDamped", "ExplicitEigenvalues",
    "KLProcess",
    "BoundaryCondition", "Deterministic", "Random", "as_boundary",
    "HeatProblem", "CanonicalProblem", "SpatialMap",
    "canonicalize", "boundary_mean_line",
    "sample_uN_values", "sample_vN_values", "draw_solution_samples",
    "Quadrature", "ExpectationMC", "EngineSettings", "DensityCurve",
    "density_vN", "density_uN_det", "density_uN_random", "tail_bound",
    "default_grid", "coverage_grid",
    "TheoremReport", "classify", "check_hip_a", "check_hip_a2",
    "MomentReport", "moments_from_density", "moments_mc", "moment_report",
    "EmpiricalDistribution", "build_empirical", "ks_distance",
    "RunConfig", "GridSpec", "load_config", "preset", "PRESET_NAMES",
    "__version__",
]
