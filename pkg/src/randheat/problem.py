"""Problem definition on [L1, L2] and the change of variables to [0, 1].

A problem bundles the interval, the diffusion coefficient law alpha2, the two
boundary conditions (deterministic values or laws) and the canonical initial
process psi.  ``canonicalize`` produces the homogeneous image: the rescaled
diffusion beta2 = alpha2/(L2-L1)^2 and the affine spatial map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .distributions import ScalarDistribution, ScaledShifted
from .errors import InvalidInterval, OutOfDomain
from .kl import KLProcess


# ---------- boundary conditions ----------


@dataclass(frozen=True)
class Deterministic:
    """A fixed boundary value (kept distinct from a zero-variance law: the
    density of u_N is then an exact shift, never a convolution)."""

    value: float

    @property
    def is_random(self) -> bool:
        return False

    def mean(self) -> float:
        return self.value

    def var(self) -> float:
        return 0.0


@dataclass(frozen=True)
class Random:
    """An absolutely continuous boundary law."""

    dist: ScalarDistribution

    @property
    def is_random(self) -> bool:
        return True

    def mean(self) -> float:
        return self.dist.mean()

    def var(self) -> float:
        return self.dist.var()


BoundaryCondition = Union[Deterministic, Random]


def as_boundary(bc) -> BoundaryCondition:
    if isinstance(bc, (Deterministic, Random)):
        return bc
    if isinstance(bc, ScalarDistribution):
        return Random(bc)
    return Deterministic(float(bc))


# ---------- problems ----------


@dataclass(frozen=True)
class SpatialMap:
    """Affine bijection between [L1, L2] and [0, 1]."""

    L1: float
    L2: float

    @property
    def length(self) -> float:
        return self.L2 - self.L1

    def to_unit(self, x):
        return (np.asarray(x, dtype=float) - self.L1) / self.length

    def from_unit(self, y):
        return self.L1 + np.asarray(y, dtype=float) * self.length


class HeatProblem:
    """Heat problem on [L1, L2] with random diffusion, boundary data and
    canonical KL initial condition.

    alpha2, the xi_j, and the boundary values are declared independent; the
    library has no API for dependent inputs.
    """

    def __init__(self, L1: float, L2: float, alpha2: ScalarDistribution,
                 bc_A, bc_B, psi: KLProcess):
        L1, L2 = float(L1), float(L2)
        if not L1 < L2:
            raise InvalidInterval(f"need L1 < L2, got [{L1}, {L2}]")
        lo, _hi = alpha2.support
        if lo < 0.0:
            raise ValueError(
                f"diffusion law must be supported in (0, inf); support starts at {lo}")
        self.L1, self.L2 = L1, L2
        self.alpha2 = alpha2
        self.bc_A = as_boundary(bc_A)
        self.bc_B = as_boundary(bc_B)
        self.psi = psi

    @property
    def length(self) -> float:
        return self.L2 - self.L1

    @property
    def has_random_bc(self) -> bool:
        return self.bc_A.is_random or self.bc_B.is_random

    def spatial_map(self) -> SpatialMap:
        return SpatialMap(self.L1, self.L2)

    def require_inside(self, x: float) -> None:
        if not (self.L1 <= x <= self.L2):
            raise OutOfDomain(f"x={x} outside [{self.L1}, {self.L2}]")

    def __repr__(self):
        return (f"HeatProblem([{self.L1:g}, {self.L2:g}], alpha2={self.alpha2!r}, "
                f"A={self.bc_A!r}, B={self.bc_B!r}, psi={self.psi!r})")


@dataclass(frozen=True)
class CanonicalProblem:
    """Image of a HeatProblem on [0, 1] with homogeneous boundary values."""

    beta2: ScalarDistribution
    psi: KLProcess
    spatial_map: SpatialMap


def canonicalize(p: HeatProblem) -> CanonicalProblem:
    """Rescale the diffusion: beta2 = alpha2 / (L2 - L1)^2.

    The MGF transforms accordingly: mgf_beta2(lam) = mgf_alpha2(lam / len^2),
    which ScaledShifted provides for free.
    """
    sm = p.spatial_map()
    beta2 = ScaledShifted(p.alpha2, 1.0 / sm.length ** 2, 0.0)
    return CanonicalProblem(beta2=beta2, psi=p.psi, spatial_map=sm)


def boundary_mean_line(p: HeatProblem, x: float) -> float:
    """((x-L1) E[B] + (L2-x) E[A]) / (L2-L1); the exact mean of u_N for all N, t."""
    p.require_inside(x)
    return ((x - p.L1) * p.bc_B.mean() + (p.L2 - x) * p.bc_A.mean()) / p.length


def boundary_line_for_draws(p: HeatProblem, x, a, b):
    """((x-L1) b + (L2-x) a) / (L2-L1) for concrete boundary draws a, b."""
    xa = np.asarray(x, dtype=float)
    return ((xa - p.L1) * b + (p.L2 - xa) * a) / p.length
