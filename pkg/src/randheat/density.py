"""Density approximation for truncated solutions, in two estimator forms.

The canonical object is the law of ``v_N(y, t) = sum_{n<=N} A_n
exp(-n^2 pi^2 beta2 t) sin(n pi y)``.  Conditioning on ``beta2`` and on the
coefficients ``A_2..A_N`` and transforming the remaining ``A_1`` factor turns
that law into

    f(v) = E[ f_{A_1}(Z) * Y ],
    Z = (v - sum_{n>=2} A_n e^{-n^2 pi^2 beta2 t} sin(n pi y)) * Y,
    Y = e^{pi^2 beta2 t} / sin(pi y),

which is evaluated either by nested quadrature over (beta2, A_2..A_N) or by
averaging the integrand over a common set of Monte Carlo draws.  Solution
densities on the physical interval follow by translation (deterministic
boundary values) or by convolution with the scaled boundary laws (random
ones).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import IO, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline

from .distributions import (
    Normal,
    Quartic,
    ScalarDistribution,
    ScaledShifted,
    as_rng,
)
from .errors import (
    UNAVAILABLE,
    DegenerateCoefficient,
    SingularPoint,
    UnsupportedN,
    is_unavailable,
)
from .problem import (
    CanonicalProblem,
    HeatProblem,
    boundary_mean_line,
    canonicalize,
)
from .series import sample_uN_values

__all__ = [
    "Quadrature",
    "ExpectationMC",
    "EngineSettings",
    "DensityCurve",
    "density_vN",
    "density_uN_det",
    "density_uN_random",
    "tail_bound",
    "default_grid",
]

# refusal band for the canonical coordinate: the Y factor and the analytic
# bound both blow up like 1/sin(pi y) toward the endpoints
_Y_MIN = 1e-3

_TINY_SCALE = 1e-300


# ---------- estimator tags ----------


@dataclass(frozen=True)
class Quadrature:
    """Deterministic nested-quadrature estimator."""

    def label(self) -> str:
        return "quadrature"


@dataclass(frozen=True)
class ExpectationMC:
    """Expectation-form Monte Carlo with common random numbers."""

    samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")

    def label(self) -> str:
        return f"expectation_mc(samples={self.samples}, seed={self.seed})"


EstimatorT = Union[Quadrature, ExpectationMC]


@dataclass
class EngineSettings:
    """Tunable knobs of the density engine; defaults match the test suite.

    rel_tol is applied per integration level (outer beta2 sweep, each inner
    coefficient direction, boundary convolution).  tail_mass is the per-side
    mass dropped when an unbounded support must be truncated; every truncation
    performed is recorded in the curve metadata.
    """

    estimator: EstimatorT = field(default_factory=Quadrature)
    rel_tol: float = 1e-6
    quad_cap: int = 6
    tail_mass: float = 1e-8
    coeff_tail_mass: float = 1e-6
    lattice_drop_mass: float = 1e-7
    interp_points: int = 601
    validate_interpolation: bool = False
    interp_check_points: int = 50
    interp_budget: float = 1e-4
    validation_seed: int = 7


# ---------- result type ----------


@dataclass
class DensityCurve:
    """A density approximation sampled on a fixed evaluation grid.

    ``x`` is the evaluation coordinate of the underlying problem: the point in
    [L1, L2] for solution curves, the canonical y in (0, 1) for v_N curves.
    est_std_err is present for Monte Carlo estimates only.
    """

    x: float
    t: float
    N: int
    u_grid: np.ndarray
    values: np.ndarray
    estimator: EstimatorT
    est_std_err: Optional[np.ndarray] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.u_grid = np.asarray(self.u_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.u_grid.ndim != 1 or self.u_grid.size < 2:
            raise ValueError("u_grid must be a 1-d vector with >= 2 points")
        if np.any(np.diff(self.u_grid) <= 0.0):
            raise ValueError("u_grid must be strictly increasing")
        if self.values.shape != self.u_grid.shape:
            raise ValueError("values and u_grid must have matching shapes")
        if np.any(self.values < 0.0):
            raise ValueError("density values must be nonnegative")
        if self.est_std_err is not None:
            self.est_std_err = np.asarray(self.est_std_err, dtype=float)
            if self.est_std_err.shape != self.u_grid.shape:
                raise ValueError("est_std_err must match the grid shape")

    def grid_mass(self) -> float:
        """Trapezoid integral of the curve over its grid."""
        return float(np.trapezoid(self.values, self.u_grid))

    def to_csv(self, target: Union[str, IO[str]]) -> None:
        """Write ``u,f,std_err`` rows with #-comment metadata up front.

        The output is a pure function of the curve's data (12 significant
        digits, LF endings), so identical curves serialize byte-identically.
        """
        if isinstance(target, str):
            with open(target, "w", encoding="utf-8", newline="\n") as fh:
                self.to_csv(fh)
            return
        out = target
        out.write(f"# x: {_fmt(self.x)}\n")
        out.write(f"# t: {_fmt(self.t)}\n")
        out.write(f"# N: {self.N}\n")
        out.write(f"# estimator: {self.estimator.label()}\n")
        if isinstance(self.estimator, ExpectationMC):
            out.write(f"# seed: {self.estimator.seed}\n")
        out.write(f"# normalization: {_fmt(self.grid_mass())}\n")
        for key in sorted(self.metadata):
            out.write(f"# {key}: {self.metadata[key]}\n")
        out.write("u,f,std_err\n")
        se = self.est_std_err
        for i in range(self.u_grid.size):
            tail = _fmt(se[i]) if se is not None else ""
            out.write(f"{_fmt(self.u_grid[i])},{_fmt(self.values[i])},{tail}\n")


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


# ---------- Gauss-Kronrod 15(7) pair (QUADPACK abscissae) ----------

_GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_GK_WEIGHTS = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
# embedded 7-point Gauss rule lives on nodes 1, 3, 5, 7, 9, 11, 13
_G7_INDEX = np.array([1, 3, 5, 7, 9, 11, 13])
_G7_WEIGHTS = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])


def _adaptive_gk(fn, lo: float, hi: float, rel_tol: float,
                 max_intervals: int = 60) -> Tuple[np.ndarray, int]:
    """Adaptive GK15(7) for a vector-valued integrand on [lo, hi].

    fn maps a batch of abscissae (k,) to integrand rows (k, G).  Intervals are
    split worst-first until the summed sup-norm error estimate drops below
    rel_tol times the sup norm of the accumulated integral.
    """
    def eval_interval(a: float, b: float):
        half = 0.5 * (b - a)
        rows = np.asarray(fn(0.5 * (a + b) + half * _GK_NODES))
        kron = half * (_GK_WEIGHTS[:, None] * rows).sum(axis=0)
        gauss = half * (_G7_WEIGHTS[:, None] * rows[_G7_INDEX]).sum(axis=0)
        return a, b, kron, float(np.max(np.abs(kron - gauss)))

    intervals = [eval_interval(lo, hi)]
    while len(intervals) < max_intervals:
        total = np.sum([iv[2] for iv in intervals], axis=0)
        err = sum(iv[3] for iv in intervals)
        scale = max(float(np.max(np.abs(total))), _TINY_SCALE)
        if err <= rel_tol * scale:
            break
        worst = max(range(len(intervals)), key=lambda i: intervals[i][3])
        a, b, _, _ = intervals.pop(worst)
        mid = 0.5 * (a + b)
        intervals.append(eval_interval(a, mid))
        intervals.append(eval_interval(mid, b))
    total = np.sum([iv[2] for iv in intervals], axis=0)
    return total, len(intervals)


def _law_panels(law: ScalarDistribution, rel_tol: float, tail_mass: float,
                extra_splits: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """Fixed quadrature nodes and weights adapted to one scalar law.

    Subdivides the (effective) support until the embedded GK error on the
    law's density integral is below rel_tol, then emits the 7-point Gauss
    nodes of each panel with weights that already include the density factor.
    extra_splits forces further uniform subdivision, giving a strictly finer
    node set for refinement checks.
    """
    lo, hi = law.effective_support(tail_mass)
    panels = [(lo, hi)]

    def panel_err(a: float, b: float) -> float:
        half = 0.5 * (b - a)
        vals = np.asarray(law.pdf(0.5 * (a + b) + half * _GK_NODES))
        kron = half * float(_GK_WEIGHTS @ vals)
        gauss = half * float(_G7_WEIGHTS @ vals[_G7_INDEX])
        return abs(kron - gauss)

    errs = [panel_err(lo, hi)]
    while len(panels) < 60 and sum(errs) > rel_tol:
        worst = max(range(len(panels)), key=lambda i: errs[i])
        a, b = panels.pop(worst)
        errs.pop(worst)
        mid = 0.5 * (a + b)
        panels.extend([(a, mid), (mid, b)])
        errs.extend([panel_err(a, mid), panel_err(mid, b)])
    for _ in range(extra_splits):
        panels = [half for a, b in panels
                  for half in ((a, 0.5 * (a + b)), (0.5 * (a + b), b))]

    g7 = _GK_NODES[_G7_INDEX]
    nodes, weights = [], []
    for a, b in sorted(panels):
        half = 0.5 * (b - a)
        x = 0.5 * (a + b) + half * g7
        nodes.append(x)
        weights.append(half * _G7_WEIGHTS * np.asarray(law.pdf(x)))
    return np.concatenate(nodes), np.concatenate(weights)


# ---------- conditional density given beta2 ----------


class _ConditionalDensity:
    """Density of v_N given beta2, evaluated on a fixed grid.

    Uses the exact Gaussian collapse when the coefficient family is Normal.
    Otherwise the inner coefficient directions form a tensor lattice in
    xi-space built from per-law adaptive panels (the lattice is shared across
    beta2 values).  The lattice sum is a correlation of its weight measure
    with the first coefficient's conditional density, so when that density is
    smooth the lattice weights are first scattered linearly onto a uniform
    bin grid whose pitch keeps the piecewise-linear interpolation error below
    a curvature-based budget; discontinuous coefficient densities fall back
    to the direct lattice-times-grid pass.  Lattice points in the smallest-
    weight tail are dropped: the induced error is bounded by the dropped
    weight mass times the sup of the conditional density (lattice_drop_mass).
    """

    _CHUNK_BUDGET = 1 << 22   # bins-by-grid elements held at once
    _BASE_LEVELS = 3          # lattice axes materialized in memory
    _MAX_BINS = 400_000
    _INTERP_TOL = 1e-6        # relative linear-interpolation budget

    def __init__(self, cp: CanonicalProblem, y: float, t: float, N: int,
                 settings: EngineSettings, inner_tol: float,
                 extra_splits: int = 0):
        self.y, self.t, self.N = y, t, N
        self.sin_y = math.sin(math.pi * y)
        self.a1_law = cp.psi.fourier_coeff_law(1)
        self.drop_mass = settings.lattice_drop_mass
        ns = np.arange(1, N + 1, dtype=float)
        nu = np.array([cp.psi.eigenvalue(int(n)) for n in ns])
        self.r = np.sqrt(2.0 * nu) * np.sin(ns * math.pi * self.y)
        self.n2 = ns ** 2
        self.gaussian = isinstance(cp.psi.coeff_law, Normal)
        # closed-form fast path for the heavy-tailed standardized family,
        # which dominates the lattice workload in practice
        inner = getattr(self.a1_law, "inner", None)
        self.quartic_scale = (
            self.a1_law.c if isinstance(inner, Quartic)
            and getattr(self.a1_law, "d", 1.0) == 0.0 else None)
        self.inner_levels: List[int] = []
        self.lattice_total = 0
        self.lattice_kept = 0
        if self.gaussian:
            return
        # levels with a vanishing spatial factor contribute a point mass at
        # zero and drop out of the convolution
        active = [n for n in range(2, N + 1)
                  if abs(self.r[n - 1]) > _TINY_SCALE]
        if not active:
            return
        xi_nodes, xi_w = _law_panels(
            cp.psi.coeff_law, inner_tol, settings.coeff_tail_mass,
            extra_splits=extra_splits)
        self.inner_levels = active
        self.nodes_per_level = xi_nodes.size
        self.level_nodes, self.level_weights = xi_nodes, xi_w
        base = active[-self._BASE_LEVELS:]
        self.outer_levels = active[:-self._BASE_LEVELS] or []
        grids = np.meshgrid(*([xi_nodes] * len(base)), indexing="ij")
        axes = [g.ravel() for g in grids]
        wgrids = np.meshgrid(*([xi_w] * len(base)), indexing="ij")
        weights = np.prod([w.ravel() for w in wgrids], axis=0)
        self.lattice_total = weights.size * xi_nodes.size ** len(
            self.outer_levels)
        order = np.argsort(weights, kind="stable")
        cum = np.cumsum(weights[order])
        first = int(np.searchsorted(cum, self.drop_mass))
        keep = np.sort(order[first:])
        self.base_levels = base
        self.base_axes = [a[keep] for a in axes]
        self.base_weights = weights[keep]
        self.lattice_kept = keep.size * xi_nodes.size ** len(
            self.outer_levels)
        # bin pitch (in units of the first coefficient's law) keeping the
        # piecewise-linear interpolation of that density within budget; the
        # refinement pass halves it so the drift check sees this knob too
        self.bin_pitch_a1 = self._interp_pitch(cp.psi.coeff_law,
                                               settings.coeff_tail_mass)
        if self.bin_pitch_a1 is not None and extra_splits > 0:
            self.bin_pitch_a1 /= 2.0 ** extra_splits

    def _interp_pitch(self, xi_law: ScalarDistribution,
                      tail_mass: float) -> Optional[float]:
        """Standardized-units bin pitch, or None if interpolation is unsafe."""
        lo, hi = xi_law.effective_support(tail_mass)

        def max_curv(points: int) -> Tuple[float, float]:
            probe = np.linspace(lo, hi, points)
            vals = np.asarray(xi_law.pdf(probe))
            if not np.all(np.isfinite(vals)):
                return math.nan, math.nan
            h = (hi - lo) / (points - 1)
            return (float(np.max(np.abs(np.diff(vals, 2)))) / h ** 2,
                    float(np.max(vals)))

        curv1, sup = max_curv(2001)
        curv2, _ = max_curv(4001)
        if not (math.isfinite(curv2) and sup > 0.0):
            return None
        # for a twice-differentiable density the second-difference estimate
        # converges as the probe refines; a jump grows like 1/h^2 and a kink
        # like 1/h, and neither admits an h^2 interpolation error bound
        if curv2 > 1.6 * curv1 + 1e-12 * sup:
            return None
        scale = abs(getattr(self.a1_law, "c", 1.0))
        if curv2 <= 0.0:
            return (hi - lo) / 64.0 * scale
        pitch = math.sqrt(8.0 * self._INTERP_TOL * sup / curv2)
        return min(pitch, (hi - lo) / 64.0) * scale

    def __call__(self, vgrid: np.ndarray, b2: float) -> np.ndarray:
        damp = np.exp(-self.n2 * math.pi ** 2 * b2 * self.t)
        if self.gaussian:
            s2 = float(np.sum((self.r * damp) ** 2))
            return np.exp(-0.5 * vgrid ** 2 / s2) / math.sqrt(
                2.0 * math.pi * s2)
        yfac = math.exp(math.pi ** 2 * b2 * self.t) / self.sin_y
        if not self.inner_levels:
            return np.asarray(self.a1_law.pdf(vgrid * yfac)) * yfac
        scale_of = {n: self.r[n - 1] * damp[n - 1] for n in self.inner_levels}
        base_off = np.zeros_like(self.base_weights)
        for axis, n in zip(self.base_axes, self.base_levels):
            base_off = base_off + scale_of[n] * axis
        outer_scales = [scale_of[n] for n in self.outer_levels]
        out = np.zeros_like(vgrid)
        for off, w in self._offset_blocks(base_off, outer_scales, yfac):
            out += self._weighted_density(vgrid, off, w, yfac)
        return out * yfac

    def _outer_combos(self, outer_scales: Sequence[float]):
        """(shift, weight factor) over the non-materialized lattice axes."""
        if not outer_scales:
            yield 0.0, 1.0
            return
        for combo in itertools.product(
                range(self.level_nodes.size), repeat=len(outer_scales)):
            shift = sum(s * self.level_nodes[i]
                        for s, i in zip(outer_scales, combo))
            wfac = math.prod(self.level_weights[i] for i in combo)
            yield shift, wfac

    def _offset_blocks(self, base_off: np.ndarray,
                       outer_scales: Sequence[float], yfac: float):
        """Collapse the lattice to (offsets, weights) blocks, binned if safe."""
        ext = sum(abs(s) * float(np.max(np.abs(self.level_nodes)))
                  for s in outer_scales)
        lo = float(base_off.min()) - ext
        hi = float(base_off.max()) + ext
        pitch = (self.bin_pitch_a1 / yfac
                 if self.bin_pitch_a1 is not None else None)
        direct = (
            pitch is None
            or hi - lo < 4.0 * pitch
            or (hi - lo) / pitch > self._MAX_BINS
            or self.lattice_kept * 2 < (hi - lo) / pitch)
        if direct:
            for shift, wfac in self._outer_combos(outer_scales):
                yield base_off + shift, self.base_weights * wfac
            return
        nbins = int((hi - lo) / pitch) + 2
        centers = lo + pitch * np.arange(nbins)
        binned = np.zeros(nbins)
        for shift, wfac in self._outer_combos(outer_scales):
            pos = (base_off + shift - lo) / pitch
            idx = np.clip(pos.astype(np.int64), 0, nbins - 2)
            frac = pos - idx
            w = self.base_weights * wfac
            binned += np.bincount(idx, w * (1.0 - frac), minlength=nbins)
            binned += np.bincount(idx + 1, w * frac, minlength=nbins)
        keep = np.nonzero(binned)[0]
        yield centers[keep], binned[keep]

    def _weighted_density(self, vgrid: np.ndarray, offsets: np.ndarray,
                          weights: np.ndarray, yfac: float) -> np.ndarray:
        """sum_k w_k f_{A_1}((v - off_k) * yfac) over the evaluation grid."""
        out = np.zeros_like(vgrid)
        col = vgrid[:, None]
        chunk = max(1, self._CHUNK_BUDGET // max(vgrid.size, 1))
        for start in range(0, offsets.size, chunk):
            off = offsets[start:start + chunk]
            w = weights[start:start + chunk]
            if self.quartic_scale is not None:
                args = (col - off[None, :]) * (yfac / self.quartic_scale)
                np.multiply(args, args, out=args)
                np.multiply(args, args, out=args)
                args += 1.0
                np.reciprocal(args, out=args)
                out += (args @ w) * (math.sqrt(2.0) / math.pi
                                     / self.quartic_scale)
            else:
                args = (col - off[None, :]) * yfac
                out += np.asarray(self.a1_law.pdf(args)) @ w
        return out


def _beta2_range(beta2: ScalarDistribution,
                 tail_mass: float) -> Tuple[float, float, bool]:
    lo, hi = beta2.support
    truncated = not (math.isfinite(lo) and math.isfinite(hi))
    lo_e, hi_e = beta2.effective_support(tail_mass)
    return max(lo_e, 0.0), hi_e, truncated


def _vn_quadrature(cp: CanonicalProblem, y: float, t: float, N: int,
                   v_grid: np.ndarray,
                   settings: EngineSettings) -> Tuple[np.ndarray, dict]:
    blo, bhi, truncated = _beta2_range(cp.beta2, settings.tail_mass)
    meta: dict = {}
    if truncated:
        meta["beta2_truncation"] = (
            f"[{_fmt(blo)}, {_fmt(bhi)}] (mass {_fmt(settings.tail_mass)} "
            f"per unbounded side)")

    def run(inner_tol: float, grid: np.ndarray, extra_splits: int = 0):
        cond = _ConditionalDensity(cp, y, t, N, settings, inner_tol,
                                   extra_splits=extra_splits)
        if bhi - blo <= 1e-14 * max(1.0, abs(bhi)):
            # point-mass diffusion coefficient: no outer integral
            return cond(grid, 0.5 * (blo + bhi)), 1, cond

        def fn(b_arr):
            dens = np.asarray(cp.beta2.pdf(b_arr))
            return np.stack([cond(grid, float(b)) * d
                             for b, d in zip(b_arr, dens)])

        vals, n_int = _adaptive_gk(fn, blo, bhi, settings.rel_tol)
        return vals, n_int, cond

    values, n_intervals, cond = run(settings.rel_tol, v_grid)
    meta["outer_intervals"] = n_intervals
    if cond.inner_levels:
        meta["inner_nodes_per_level"] = cond.nodes_per_level
        meta["lattice_kept"] = f"{cond.lattice_kept}/{cond.lattice_total}"
        # re-integrate a thin slice of the grid on a strictly finer lattice; a
        # visible shift means the per-level tolerance was not actually reached
        step = max(1, v_grid.size // 24)
        subset = v_grid[::step]
        coarse = values[::step]
        fine, _, _ = run(settings.rel_tol / 16.0, subset, extra_splits=1)
        drift = float(np.max(np.abs(fine - coarse)))
        meta["inner_refinement_drift"] = _fmt(drift)
        peak = max(float(np.max(values)), _TINY_SCALE)
        if drift > max(100.0 * settings.rel_tol * peak, 1e-7):
            values, n_intervals, _ = run(settings.rel_tol / 16.0, v_grid,
                                         extra_splits=1)
            meta["inner_escalated"] = True
            meta["outer_intervals"] = n_intervals
    return np.maximum(values, 0.0), meta


def _vn_expectation_mc(cp: CanonicalProblem, y: float, t: float, N: int,
                       v_grid: np.ndarray, est: ExpectationMC
                       ) -> Tuple[np.ndarray, np.ndarray, dict]:
    a1_law = cp.psi.fourier_coeff_law(1)
    sin_y = math.sin(math.pi * y)
    ns = np.arange(2, N + 1, dtype=float)
    r = np.array([math.sqrt(2.0 * cp.psi.eigenvalue(int(n)))
                  * math.sin(n * math.pi * y) for n in ns])
    rng = as_rng(est.seed)
    total = int(est.samples)
    G = v_grid.size
    chunk = max(1, (1 << 22) // max(G, 1))
    sum_w = np.zeros(G)
    sum_w2 = np.zeros(G)
    done = 0
    while done < total:
        m = min(chunk, total - done)
        b2 = np.asarray(cp.beta2.sample(rng, m), dtype=float)
        yfac = np.exp(math.pi ** 2 * b2 * t) / sin_y
        rest = np.zeros(m)
        if N > 1:
            xi = np.asarray(cp.psi.coeff_law.sample(rng, m * (N - 1)))
            xi = xi.reshape(m, N - 1)
            damp = np.exp(-(ns[None, :] ** 2) * math.pi ** 2
                          * b2[:, None] * t)
            rest = (xi * damp * r[None, :]).sum(axis=1)
        z = (v_grid[:, None] - rest[None, :]) * yfac[None, :]
        w = np.asarray(a1_law.pdf(z)) * yfac[None, :]
        sum_w += w.sum(axis=1)
        sum_w2 += (w * w).sum(axis=1)
        done += m
    mean = sum_w / total
    var = np.maximum(sum_w2 / total - mean ** 2, 0.0)
    se = np.sqrt(var / total)
    return np.maximum(mean, 0.0), se, {"mc_samples": total}


def _check_grid(grid) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size < 2 or np.any(np.diff(g) <= 0.0):
        raise ValueError("evaluation grid must be strictly increasing, >= 2 points")
    return g


def _check_args(y: float, t: float, N: int, settings: EngineSettings) -> None:
    if not _Y_MIN <= y <= 1.0 - _Y_MIN:
        raise SingularPoint(
            f"canonical coordinate y={y!r} too close to the boundary: "
            f"sin(pi y) factors degenerate (allowed band [{_Y_MIN}, "
            f"{1 - _Y_MIN}])")
    if t <= 0.0:
        raise ValueError(f"t must be > 0, got {t}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if isinstance(settings.estimator, Quadrature) and N > settings.quad_cap:
        raise UnsupportedN(
            f"quadrature estimator supports N <= {settings.quad_cap}; "
            f"got N={N} (use the Monte Carlo estimator)")


def density_vN(cp: CanonicalProblem, y: float, t: float, N: int, v_grid,
               cfg: Optional[EngineSettings] = None) -> DensityCurve:
    """Density of the canonical truncated solution v_N(y, t) on a grid.

    Parameters
    ----------
    cp : CanonicalProblem
        Canonical data (beta2 law and the initial process).
    y, t : float
        Evaluation point; y must stay inside [1e-3, 1 - 1e-3] and t > 0.
    N : int
        Truncation order (>= 1).
    v_grid : array_like
        Strictly increasing evaluation points.
    cfg : EngineSettings, optional
        Estimator choice and tolerances; defaults to quadrature.

    Returns
    -------
    DensityCurve
    """
    settings = cfg if cfg is not None else EngineSettings()
    grid = _check_grid(v_grid)
    _check_args(y, t, N, settings)
    if isinstance(settings.estimator, Quadrature):
        values, meta = _vn_quadrature(cp, y, t, N, grid, settings)
        se = None
    else:
        values, se, meta = _vn_expectation_mc(cp, y, t, N, grid,
                                              settings.estimator)
    return DensityCurve(x=y, t=t, N=N, u_grid=grid, values=values,
                        estimator=settings.estimator, est_std_err=se,
                        metadata=meta)


def density_uN_det(p: HeatProblem, x: float, t: float, N: int, u_grid,
                   cfg: Optional[EngineSettings] = None) -> DensityCurve:
    """Density of u_N(x, t) when both boundary values are deterministic.

    Equals the canonical density translated by the boundary line
    ((x - L1) B + (L2 - x) A) / (L2 - L1); the translation is exact, so the
    curve for (A, B) is the (0, 0) curve shifted to machine precision.
    """
    if p.has_random_bc:
        raise ValueError("boundary values are random; use density_uN_random")
    p.require_inside(x)
    shift = boundary_mean_line(p, x)
    y = float(p.spatial_map().to_unit(x))
    inner = density_vN(canonicalize(p), y, t, N,
                       np.asarray(u_grid, dtype=float) - shift, cfg)
    meta = dict(inner.metadata)
    meta["boundary_shift"] = _fmt(shift)
    return DensityCurve(x=x, t=t, N=N, u_grid=np.asarray(u_grid, dtype=float),
                        values=inner.values, estimator=inner.estimator,
                        est_std_err=inner.est_std_err, metadata=meta)


def _scaled_bc_laws(p: HeatProblem, x: float, settings: EngineSettings):
    """Split p B + (1-p) A into a deterministic shift and scaled random laws."""
    frac = float(p.spatial_map().to_unit(x))
    shift = 0.0
    parts = []
    meta: dict = {}
    for tag, bc, c in (("B", p.bc_B, frac), ("A", p.bc_A, 1.0 - frac)):
        if not bc.is_random:
            shift += c * bc.mean()
            continue
        law = ScaledShifted(bc.dist, c, 0.0)
        lo, hi = law.effective_support(settings.tail_mass)
        if not law.is_bounded():
            meta[f"bc_{tag}_truncation"] = (
                f"[{_fmt(lo)}, {_fmt(hi)}] (mass {_fmt(settings.tail_mass)} "
                f"per unbounded side)")
        parts.append((law, lo, hi))
    return frac, shift, parts, meta


def density_uN_random(p: HeatProblem, x: float, t: float, N: int, u_grid,
                      cfg: Optional[EngineSettings] = None) -> DensityCurve:
    """Density of u_N(x, t) with random boundary values.

    Convolves the canonical density with the laws of the scaled boundary
    contributions p B and (1 - p) A (p = (x - L1)/(L2 - L1)).  The canonical
    density is evaluated once on a dense cache grid and interpolated with a
    cubic spline inside the adaptive convolution; unbounded boundary supports
    are truncated at the configured tail mass and recorded in the metadata.
    For Monte Carlo inner curves the pointwise standard error is propagated
    through the convolution assuming fully correlated cache noise (common
    random numbers make neighboring cache points move together).
    """
    settings = cfg if cfg is not None else EngineSettings()
    if not p.has_random_bc:
        raise ValueError("both boundary values are deterministic; "
                         "use density_uN_det")
    p.require_inside(x)
    grid = _check_grid(u_grid)
    y = float(p.spatial_map().to_unit(x))
    _check_args(y, t, N, settings)
    frac, det_shift, parts, meta = _scaled_bc_laws(p, x, settings)

    span_lo = det_shift + sum(lo for _, lo, _ in parts)
    span_hi = det_shift + sum(hi for _, _, hi in parts)
    cache_grid = np.linspace(grid[0] - span_hi, grid[-1] - span_lo,
                             settings.interp_points)
    cp = canonicalize(p)
    inner = density_vN(cp, y, t, N, cache_grid, settings)
    meta.update(inner.metadata)
    spline = CubicSpline(cache_grid, inner.values)
    se_spline = (CubicSpline(cache_grid, inner.est_std_err)
                 if inner.est_std_err is not None else None)

    if settings.validate_interpolation and isinstance(
            settings.estimator, Quadrature):
        probe_rng = as_rng(settings.validation_seed)
        probes = np.sort(probe_rng.uniform(cache_grid[0], cache_grid[-1],
                                           settings.interp_check_points))
        direct = density_vN(cp, y, t, N, probes, settings).values
        err = float(np.max(np.abs(spline(probes) - direct)))
        meta["interp_check_max_err"] = _fmt(err)
        if err > settings.interp_budget:
            raise RuntimeError(
                f"interpolation cache failed its accuracy check: max error "
                f"{err:.3e} exceeds budget {settings.interp_budget:.1e}")

    def lookup(z: np.ndarray) -> np.ndarray:
        vals = spline(np.clip(z, cache_grid[0], cache_grid[-1]))
        out = np.maximum(vals, 0.0)
        if se_spline is None:
            return out
        ses = np.maximum(se_spline(np.clip(z, cache_grid[0], cache_grid[-1])),
                         0.0)
        return np.concatenate([out, ses])

    if len(parts) == 1:
        law, lo, hi = parts[0]

        def fn(a_arr):
            dens = np.asarray(law.pdf(a_arr))
            return np.stack([lookup(grid - det_shift - float(a)) * d
                             for a, d in zip(a_arr, dens)])

        stacked, _ = _adaptive_gk(fn, lo, hi, settings.rel_tol)
    else:
        (law_b, lo_b, hi_b), (law_a, lo_a, hi_a) = parts

        def inner_for(b: float):
            def fn(a_arr):
                dens = np.asarray(law_a.pdf(a_arr))
                return np.stack(
                    [lookup(grid - det_shift - b - float(a)) * d
                     for a, d in zip(a_arr, dens)])

            res, _ = _adaptive_gk(fn, lo_a, hi_a, settings.rel_tol)
            return res

        def fn_outer(b_arr):
            dens = np.asarray(law_b.pdf(b_arr))
            return np.stack([inner_for(float(b)) * d
                             for b, d in zip(b_arr, dens)])

        stacked, _ = _adaptive_gk(fn_outer, lo_b, hi_b, settings.rel_tol)

    if se_spline is not None:
        values, se = stacked[:grid.size], stacked[grid.size:]
        se = np.maximum(se, 0.0)
    else:
        values, se = stacked, None
    return DensityCurve(x=x, t=t, N=N, u_grid=grid,
                        values=np.maximum(values, 0.0),
                        estimator=settings.estimator, est_std_err=se,
                        metadata=meta)


def tail_bound(p: HeatProblem, x: float, t: float, N: int):
    """Analytic sup-norm bound on the distance to the next truncation orders.

    Evaluates ||f_A||_1 ||f_B||_1 * (2 ||psi|| L / sin^2(pi y)) *
    sum_{n>N} E[exp(-(n^2 - 2) pi^2 alpha2 t / (L2-L1)^2)], where L is the
    Lipschitz constant of the first coefficient's density and the expectation
    is the MGF of alpha2 at a nonpositive argument.  The two L1 factors equal
    one for probability densities and are kept only for transparency with the
    stated bound.  Returns UNAVAILABLE when L or the MGF has no closed form.
    """
    p.require_inside(x)
    if t <= 0.0:
        raise ValueError(f"t must be > 0, got {t}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    y = float(p.spatial_map().to_unit(x))
    if not _Y_MIN <= y <= 1.0 - _Y_MIN:
        raise SingularPoint(
            f"bound degenerates like 1/sin^2 near the boundary; y={y!r}")
    lip = p.psi.fourier_coeff_law(1).lipschitz_constant()
    if is_unavailable(lip):
        return UNAVAILABLE
    prefactor = (2.0 * p.psi.psi_l2_norm() * float(lip)
                 / math.sin(math.pi * y) ** 2)
    len2 = p.length ** 2
    total = 0.0
    n = N + 1
    while n < 100_000:
        lam = -(n * n - 2.0) * math.pi ** 2 * t / len2
        term = p.alpha2.mgf(lam)
        if is_unavailable(term):
            return UNAVAILABLE
        total += float(term)
        if float(term) < 1e-16:
            break
        n += 1
    return prefactor * total


def default_grid(p: HeatProblem, x: float, t: float, N: int,
                 rng: Union[int, np.random.Generator, None] = None,
                 points: int = 401, span: float = 6.0,
                 pilot_samples: int = 10_000) -> np.ndarray:
    """Evaluation grid centered on a pilot estimate of the solution's law.

    Draws pilot samples of u_N(x, t) and spans mean +/- span * std with the
    requested number of points.  For heavy-tailed coefficient laws the pilot
    std fluctuates between runs; pass a seeded rng when reproducibility of
    the grid itself matters.
    """
    samples = sample_uN_values(p, x, t, N, pilot_samples, as_rng(rng))
    m = float(samples.mean())
    s = float(samples.std())
    if s <= 0.0:
        s = max(abs(m), 1.0) * 1e-3
    return np.linspace(m - span * s, m + span * s, points)


def coverage_grid(p: HeatProblem, x: float, t: float, N: int,
                  mass_tol: float = 1e-6, points: int = 2001) -> np.ndarray:
    """Evaluation grid guaranteed to hold >= 1 - mass_tol of u_N(x, t)'s law.

    Deterministic union-bound construction (no sampling).  The series part
    satisfies P(|v_N| > W) <= sum_n P(|a_n xi_n| > W |a_n| / sum|a|), so a
    single coefficient-law quantile gives W; half the mass budget goes to the
    series, the other half to the random boundary laws through their own
    quantiles.  Heavy-tailed coefficients make this window generously wide --
    the price of a bound instead of an estimate.
    """
    if mass_tol <= 0.0 or mass_tol >= 1.0:
        raise ValueError(f"mass_tol must lie in (0, 1), got {mass_tol}")
    p.require_inside(x)
    cp = canonicalize(p)
    y = float(cp.spatial_map.to_unit(x))
    blo, _bhi, _trunc = _beta2_range(cp.beta2, mass_tol)
    ns = np.arange(1, N + 1, dtype=float)
    nu = np.array([cp.psi.eigenvalue(int(n)) for n in ns])
    scales = (np.sqrt(2.0 * nu) * np.abs(np.sin(ns * math.pi * y))
              * np.exp(-ns ** 2 * math.pi ** 2 * blo * t))
    scales = scales[scales > _TINY_SCALE]
    xi = cp.psi.coeff_law

    def half_width(tol: float) -> float:
        """Union-bound symmetric window for the series part at miss mass tol."""
        if not scales.size:
            return 0.0
        # per-term two-sided tail tol/(2 d); both quantile calls because the
        # coefficient law need not be symmetric
        q = tol / (4.0 * scales.size)
        return float(np.sum(scales)) * max(abs(float(xi.quantile(1.0 - q))),
                                           abs(float(xi.quantile(q))))

    def window(tol: float) -> Tuple[float, float]:
        w = half_width(tol)
        lo, hi = -w, w
        for bc, frac in ((p.bc_A, 1.0 - y), (p.bc_B, y)):
            if bc.is_random:
                b_lo, b_hi = bc.dist.effective_support(tol / 8.0)
            else:
                b_lo = b_hi = bc.mean()
            lo += frac * b_lo
            hi += frac * b_hi
        return lo, hi

    lo, hi = window(mass_tol)
    if hi - lo < 1e-6:
        mid = 0.5 * (lo + hi)
        lo, hi = mid - 0.5, mid + 0.5
    # heavy tails blow the certified window far past where the density lives;
    # spend most points on a core holding 99% of the mass and keep sparse
    # flanks out to the certified edges
    c_lo, c_hi = window(max(mass_tol, 1e-2))
    n_out = max(2, int(round(0.15 * points)))
    n_core = points - 2 * n_out
    if c_hi - c_lo < 1e-6 or c_lo - lo < 4.0 * (c_hi - c_lo) / max(n_core, 1):
        return np.linspace(lo, hi, points)
    return np.concatenate([
        np.linspace(lo, c_lo, n_out + 1)[:-1],
        np.linspace(c_lo, c_hi, n_core),
        np.linspace(c_hi, hi, n_out + 1)[1:],
    ])
