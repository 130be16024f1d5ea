"""Classify a problem against the convergence-theorem hypotheses.

Four guarantees exist, one per combination of boundary type (random vs
deterministic) and diffusion hypothesis (hip_a vs hip_a2):

    Super        random BCs,        hip_a,  Lipschitz f_{A_1}
    SuperLlei    random BCs,        hip_a2, bounded a.e.-continuous f_{A_1}
    SuperDet     deterministic BCs, hip_a,  Lipschitz f_{A_1}
    SuperDetLlei deterministic BCs, hip_a2, bounded a.e.-continuous f_{A_1}

All conditions are sufficient, not necessary, so every check is tri-state:
"Yes" and "No" only when the catalogued analysis decides the case, "Unknown"
otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .distributions import (
    Beta,
    Gamma,
    Normal,
    Quartic,
    ScalarDistribution,
    ScaledShifted,
    Triangular,
    TruncatedExponential,
    Uniform,
)
from .errors import DomainError, is_unavailable
from .problem import HeatProblem

YES = "Yes"
NO = "No"
UNKNOWN = "Unknown"


def _unwrap(law: ScalarDistribution) -> ScalarDistribution:
    """Strip ScaledShifted layers; scaling preserves every property we check
    (Lipschitz-ness, boundedness, a.e. continuity, support positivity shape).
    """
    while isinstance(law, ScaledShifted):
        law = law.inner
    return law


def check_hip_a(alpha2: ScalarDistribution, t: float, length: float) -> str:
    """First integrability hypothesis on the diffusion coefficient.

    Catalogued sufficient/negative cases:

    * support bounded below by a > 0  ->  Yes
    * Uniform starting at 0           ->  Yes (finite by direct computation)
    * Gamma(shape, rate)              ->  Yes iff shape > 1/2, else No
      (the integrand behaves like a^{shape - 3/2} near the origin)

    Everything else -> Unknown.
    """
    if t <= 0.0 or length <= 0.0:
        raise ValueError(f"need t > 0 and length > 0, got t={t}, length={length}")
    lo, _hi = alpha2.support
    if lo > 0.0:
        return YES
    core = _unwrap(alpha2)
    if isinstance(core, Uniform) and lo == 0.0:
        return YES
    if isinstance(core, Gamma):
        return YES if core.shape > 0.5 else NO
    return UNKNOWN


def check_hip_a2(alpha2: ScalarDistribution, t: float, length: float) -> str:
    """Second hypothesis: the MGF of alpha2 is finite at pi^2 t / length^2."""
    if t <= 0.0 or length <= 0.0:
        raise ValueError(f"need t > 0 and length > 0, got t={t}, length={length}")
    lam = math.pi ** 2 * t / length ** 2
    try:
        m = alpha2.mgf(lam)
    except DomainError:
        return NO
    if is_unavailable(m):
        return UNKNOWN
    return YES if math.isfinite(m) else NO


# -- density-regularity catalogue -------------------------------------------
#
# Lipschitz on all of R requires a globally bounded derivative, which jumps
# and kinks at a support edge can destroy even when the density itself is
# bounded.  "Bounded a.e. continuous" is the weaker requirement of the _Llei
# theorems: finitely many jump points are fine.

def _lipschitz_state(law: ScalarDistribution) -> Tuple[str, Optional[float]]:
    core = _unwrap(law)
    if isinstance(core, (Normal, Quartic)):
        const = law.lipschitz_constant()
        return YES, None if is_unavailable(const) else float(const)
    if isinstance(core, Triangular):
        # interior mode: two finite slopes; mode at an edge: density jumps
        if core.lo < core.mode < core.hi:
            const = law.lipschitz_constant()
            return YES, None if is_unavailable(const) else float(const)
        return NO, None
    if isinstance(core, (Uniform, TruncatedExponential)):
        return NO, None  # jump at the support edge
    if isinstance(core, Gamma):
        if core.shape >= 2.0:
            const = law.lipschitz_constant()
            return YES, None if is_unavailable(const) else float(const)
        return NO, None  # derivative (or density) blows up at the origin
    if isinstance(core, Beta):
        if core.a >= 2.0 and core.b >= 2.0:
            const = law.lipschitz_constant()
            return YES, None if is_unavailable(const) else float(const)
        return NO, None
    return UNKNOWN, None


def _bounded_ae_cont_state(law: ScalarDistribution) -> str:
    core = _unwrap(law)
    if isinstance(core, (Normal, Quartic, Uniform, TruncatedExponential,
                         Triangular)):
        return YES
    if isinstance(core, Gamma):
        return YES if core.shape >= 1.0 else NO
    if isinstance(core, Beta):
        return YES if core.a >= 1.0 and core.b >= 1.0 else NO
    try:
        sup = law.sup_density()
    except Exception:
        return UNKNOWN
    if isinstance(sup, float) and not math.isfinite(sup):
        return NO
    return UNKNOWN


@dataclass
class TheoremReport:
    """Which convergence guarantees apply to a problem, and why."""

    hip_a_holds: str
    hip_a2_holds: str
    f_A1_lipschitz: str
    f_A1_lipschitz_constant: Optional[float]
    f_A1_bounded_ae_cont: str
    applicable: List[str]
    notes: str = ""

    def render(self) -> str:
        lines = [
            "theorem applicability report",
            "----------------------------",
            f"hip_a (diffusion integrability):    {self.hip_a_holds}",
            f"hip_a2 (diffusion MGF finiteness):  {self.hip_a2_holds}",
            f"f_A1 Lipschitz on R:                {self.f_A1_lipschitz}"
            + (f"  (constant {self.f_A1_lipschitz_constant:.6g})"
               if self.f_A1_lipschitz_constant is not None else ""),
            f"f_A1 bounded, a.e. continuous:      {self.f_A1_bounded_ae_cont}",
            f"applicable guarantees:              {', '.join(self.applicable)}",
        ]
        if self.notes:
            lines.append(f"notes: {self.notes}")
        return "\n".join(lines)

    def to_kv(self) -> List[Tuple[str, str]]:
        out = [
            ("hip_a", self.hip_a_holds),
            ("hip_a2", self.hip_a2_holds),
            ("f_A1_lipschitz", self.f_A1_lipschitz),
            ("f_A1_bounded_ae_cont", self.f_A1_bounded_ae_cont),
            ("applicable", ",".join(self.applicable)),
        ]
        if self.f_A1_lipschitz_constant is not None:
            out.insert(3, ("f_A1_lipschitz_constant",
                           f"{self.f_A1_lipschitz_constant:.12g}"))
        return out


def classify(p: HeatProblem, t: float) -> TheoremReport:
    """Evaluate every theorem's hypothesis list for the problem at time t."""
    hip_a = check_hip_a(p.alpha2, t, p.length)
    hip_a2 = check_hip_a2(p.alpha2, t, p.length)
    a1 = p.psi.fourier_coeff_law(1)
    lip, lip_const = _lipschitz_state(a1)
    bae = _bounded_ae_cont_state(a1)

    random_bc = p.has_random_bc
    both_random = p.bc_A.is_random and p.bc_B.is_random
    both_det = not random_bc
    applicable: List[str] = []
    if both_random and hip_a == YES and lip == YES:
        applicable.append("Super")
    if both_random and hip_a2 == YES and bae == YES:
        applicable.append("SuperLlei")
    if both_det and hip_a == YES and lip == YES:
        applicable.append("SuperDet")
    if both_det and hip_a2 == YES and bae == YES:
        applicable.append("SuperDetLlei")

    notes = []
    if random_bc and not both_random:
        notes.append("mixed boundary types: no catalogued guarantee covers "
                     "one random and one deterministic endpoint")
    if not applicable:
        applicable = ["None"]
        if UNKNOWN in (hip_a, hip_a2, lip, bae):
            notes.append("at least one hypothesis is Unknown; conditions are "
                         "sufficient only, so convergence is not ruled out")
    return TheoremReport(
        hip_a_holds=hip_a,
        hip_a2_holds=hip_a2,
        f_A1_lipschitz=lip,
        f_A1_lipschitz_constant=lip_const,
        f_A1_bounded_ae_cont=bae,
        applicable=applicable,
        notes="; ".join(notes),
    )
