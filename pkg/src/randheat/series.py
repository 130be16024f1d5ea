"""Evaluation and sampling of the truncated series solutions v_N and u_N."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numpy as np

from .distributions import as_rng
from .errors import OutOfDomain
from .problem import HeatProblem, boundary_line_for_draws, canonicalize


@dataclass(frozen=True)
class SeriesSample:
    """One realization of the randomness feeding the truncated series."""

    beta2_draw: float
    coeffs: np.ndarray          # (A_1 .. A_N)
    bc_draws: Tuple[float, float]  # (a, b)

    def __post_init__(self):
        if self.beta2_draw <= 0.0:
            raise ValueError(f"beta2 draw must be positive, got {self.beta2_draw}")
        if np.asarray(self.coeffs).size < 1:
            raise ValueError("need at least one series coefficient")


def eval_vN(sample: SeriesSample, y, t: float):
    """sum_n A_n exp(-n^2 pi^2 beta2 t) sin(n pi y) on [0, 1]."""
    ya = np.asarray(y, dtype=float)
    if np.any((ya < 0.0) | (ya > 1.0)):
        raise OutOfDomain("canonical coordinate y must lie in [0, 1]")
    if t < 0.0:
        raise ValueError("t must be >= 0")
    coeffs = np.asarray(sample.coeffs, dtype=float)
    ns = np.arange(1, coeffs.size + 1, dtype=float)
    damp = coeffs * np.exp(-(ns ** 2) * np.pi ** 2 * sample.beta2_draw * t)
    out = np.sin(np.multiply.outer(ya, ns) * np.pi) @ damp
    return float(out) if np.isscalar(y) else out


def eval_uN(p: HeatProblem, sample: SeriesSample, x, t: float):
    """v_N at y=(x-L1)/(L2-L1) plus the boundary line through the draws."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa < p.L1) | (xa > p.L2)):
        raise OutOfDomain(f"x outside [{p.L1}, {p.L2}]")
    y = p.spatial_map().to_unit(xa)
    a, b = sample.bc_draws
    out = eval_vN(sample, y, t) + boundary_line_for_draws(p, xa, a, b)
    return float(out) if np.isscalar(x) else out


# ---------- sampling ----------


def _draw_arrays(p: HeatProblem, N: int, count: int, rng):
    """All randomness for `count` series samples, in one fixed draw order."""
    gen = as_rng(rng)
    beta2 = canonicalize(p).beta2.sample(gen, count)
    coeffs = p.psi.sample_coeffs(N, gen, count=count)
    a = p.bc_A.dist.sample(gen, count) if p.bc_A.is_random \
        else np.full(count, p.bc_A.mean())
    b = p.bc_B.dist.sample(gen, count) if p.bc_B.is_random \
        else np.full(count, p.bc_B.mean())
    return beta2, coeffs, a, b


def draw_solution_samples(p: HeatProblem, N: int, count: int,
                          rng) -> Iterator[SeriesSample]:
    """Independent draws of (beta2, A_1..A_N, a, b) as SeriesSample objects."""
    if count < 1:
        raise ValueError("count must be >= 1")
    beta2, coeffs, a, b = _draw_arrays(p, N, count, rng)
    for i in range(count):
        yield SeriesSample(float(beta2[i]), coeffs[i], (float(a[i]), float(b[i])))


def sample_uN_values(p: HeatProblem, x: float, t: float, N: int, count: int,
                     rng) -> np.ndarray:
    """Vectorized u_N(x,t) draws; same stream layout as draw_solution_samples."""
    p.require_inside(x)
    beta2, coeffs, a, b = _draw_arrays(p, N, count, rng)
    y = float(p.spatial_map().to_unit(x))
    ns = np.arange(1, N + 1, dtype=float)
    basis = np.sin(ns * np.pi * y)
    damp = np.exp(-(ns[None, :] ** 2) * np.pi ** 2 * beta2[:, None] * t)
    v = (coeffs * damp * basis[None, :]).sum(axis=1)
    return v + boundary_line_for_draws(p, x, a, b)


def sample_vN_values(cp_beta2, psi, y: float, t: float, N: int, count: int,
                     rng) -> np.ndarray:
    """Vectorized v_N(y,t) draws for a canonical problem (no boundary part)."""
    gen = as_rng(rng)
    beta2 = cp_beta2.sample(gen, count)
    coeffs = psi.sample_coeffs(N, gen, count=count)
    ns = np.arange(1, N + 1, dtype=float)
    basis = np.sin(ns * np.pi * y)
    damp = np.exp(-(ns[None, :] ** 2) * np.pi ** 2 * np.asarray(beta2)[:, None] * t)
    return (coeffs * damp * basis[None, :]).sum(axis=1)
