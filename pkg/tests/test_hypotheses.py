import math

import numpy as np
import pytest

from randheat import (
    Beta, BrownianBridge, Deterministic, Gamma, HeatProblem, KLProcess,
    Normal, Quartic, Random, ScaledShifted, Triangular, TruncatedExponential,
    Uniform, check_hip_a, check_hip_a2, classify,
)
from randheat.hypotheses import NO, UNKNOWN, YES
from conftest import preset_cfg


# ---------- integrability of 1/sqrt(alpha2) near zero ----------

def test_hip_a_uniform_positive_support():
    assert check_hip_a(Uniform(1.0, 2.0), t=0.2, length=6.0) == YES


def test_hip_a_uniform_touching_zero():
    # 1/sqrt(a) is still integrable at 0 against a bounded density
    assert check_hip_a(Uniform(0.0, 1.0), t=0.2, length=6.0) == YES


def test_hip_a_gamma_threshold():
    assert check_hip_a(Gamma(0.4, 1.0), t=0.2, length=6.0) == NO
    assert check_hip_a(Gamma(0.5, 1.0), t=0.2, length=6.0) == NO
    assert check_hip_a(Gamma(0.51, 1.0), t=0.2, length=6.0) == YES
    assert check_hip_a(Gamma(2.0, 1.0), t=0.2, length=6.0) == YES


def test_hip_a_shifted_bounded_below():
    # support bounded away from zero dominates any shape consideration
    shifted = ScaledShifted(Gamma(0.4, 1.0), 1.0, 3.0)
    assert check_hip_a(shifted, t=0.2, length=6.0) == YES


def test_hip_a_rejects_bad_args():
    with pytest.raises(ValueError):
        check_hip_a(Uniform(1.0, 2.0), t=0.0, length=6.0)
    with pytest.raises(ValueError):
        check_hip_a(Uniform(1.0, 2.0), t=0.2, length=0.0)


# ---------- MGF finiteness at the pivotal argument ----------

def test_hip_a2_uniform_always_finite():
    assert check_hip_a2(Uniform(1.0, 2.0), t=0.2, length=6.0) == YES


def test_hip_a2_gamma_rate_threshold():
    # needs E[exp(lam * alpha2)] < inf at lam = pi^2 t / len^2; Gamma(k, s)
    # has MGF only for lam < s
    t, length = 0.5, 1.0
    lam = math.pi ** 2 * t / length ** 2
    assert check_hip_a2(Gamma(1.0, lam * 0.9), t=t, length=length) == NO
    assert check_hip_a2(Gamma(1.0, lam), t=t, length=length) == NO
    assert check_hip_a2(Gamma(1.0, lam * 1.1), t=t, length=length) == YES


# ---------- full classification ----------

def _problem(bc_a, bc_b, xi, alpha2=None):
    return HeatProblem(0.0, 6.0, alpha2 or Uniform(1.0, 2.0), bc_a, bc_b,
                       KLProcess(BrownianBridge(), xi, mc_check=False))


def test_example1_classifies_superdet(ex1):
    report = classify(ex1.problem, ex1.t)
    assert "SuperDet" in report.applicable
    assert report.hip_a_holds == YES
    assert report.f_A1_lipschitz == YES


def test_random_bc_lipschitz_gives_super():
    p = _problem(Random(Normal(0.0, 1.0)), Random(Normal(1.0, 2.0)),
                 Normal(0.0, 1.0))
    report = classify(p, 0.2)
    assert "Super" in report.applicable


def test_nonlipschitz_coefficient_blocks_super():
    # standardized uniform coefficients: f_{A_1} has jumps, so the Lipschitz
    # route closes but the bounded a.e.-continuous route stays open
    r3 = math.sqrt(3.0)
    p = _problem(Random(Normal(0.0, 1.0)), Random(Normal(1.0, 2.0)),
                 Uniform(-r3, r3))
    report = classify(p, 0.2)
    assert "Super" not in report.applicable
    assert "SuperLlei" in report.applicable


def test_classification_monotone_in_hypotheses():
    """Weakening one hypothesis never enlarges the applicable set."""
    strong = classify(_problem(Random(Normal(0.0, 1.0)),
                               Random(Normal(1.0, 2.0)),
                               Normal(0.0, 1.0)), 0.2)
    weak = classify(_problem(Random(Normal(0.0, 1.0)),
                             Random(Normal(1.0, 2.0)),
                             Normal(0.0, 1.0),
                             alpha2=Gamma(0.4, 1.0)), 0.2)
    assert set(weak.applicable) - {"None"} <= set(strong.applicable)


def test_mixed_bc_is_noted():
    p = _problem(Deterministic(-1.0), Random(Normal(1.0, 1.0)),
                 Normal(0.0, 1.0))
    report = classify(p, 0.2)
    assert report.applicable == ["None"]
    assert "mixed" in report.notes.lower()


def test_triangular_interior_mode_lipschitz():
    from randheat.hypotheses import _lipschitz_state
    state, const = _lipschitz_state(Triangular(-5.0, -3.0, -2.0))
    assert state == YES
    assert const is not None and const > 0.0
    state_edge, _ = _lipschitz_state(Triangular(0.0, 0.0, 1.0))
    assert state_edge == NO


def test_grid_search_lipschitz_matches_analytic():
    # Gamma(3, 2): f'(x) = pdf'(x) has closed-form max; compare to numeric
    g = Gamma(3.0, 2.0)
    got = g.lipschitz_constant()
    xs = np.linspace(1e-6, 10.0, 2_000_001)
    pdf = g.pdf(xs)
    numeric = float(np.max(np.abs(np.diff(pdf) / np.diff(xs))))
    assert abs(got - numeric) / numeric < 1e-3


def test_report_render_and_kv():
    report = classify(preset_cfg("example3").problem, 0.2)
    text = report.render()
    assert "hip_a" in text
    kv = dict(report.to_kv())
    assert kv["hip_a"] in (YES, NO, UNKNOWN)
    assert "applicable" in kv


def test_quartic_coefficient_is_lipschitz():
    from randheat.hypotheses import _lipschitz_state
    state, const = _lipschitz_state(Quartic())
    assert state == YES
    assert const is not None and np.isfinite(const)


def test_truncexp_bounded_not_lipschitz():
    from randheat.hypotheses import _bounded_ae_cont_state, _lipschitz_state
    law = TruncatedExponential(0.5, 3.0, 5.0)
    state, _ = _lipschitz_state(law)
    assert state == NO
    assert _bounded_ae_cont_state(law) == YES


def test_beta_thresholds():
    from randheat.hypotheses import _bounded_ae_cont_state, _lipschitz_state
    assert _lipschitz_state(Beta(2.0, 2.0))[0] == YES
    assert _lipschitz_state(Beta(1.5, 2.0))[0] == NO
    assert _bounded_ae_cont_state(Beta(1.0, 1.0)) == YES
    assert _bounded_ae_cont_state(Beta(0.5, 2.0)) == NO
