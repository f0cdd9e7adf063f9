import math

import numpy as np
import pytest

from qmachine.conditional import (
    ConditionalQuery,
    Validity,
    conditional_closed_form,
    conditional_mc,
    conditional_quad,
    sweep,
    symmetric_query,
)
from qmachine.geometry import Z_AXIS, unit_vector_at_angle
from qmachine.machine import EpsilonExperiment, Outcome

SQ2 = math.sqrt(2) / 2


def test_query_requires_shared_epsilon():
    with pytest.raises(ValueError):
        ConditionalQuery(
            target=EpsilonExperiment(Z_AXIS, 0.5),
            cond=EpsilonExperiment(unit_vector_at_angle(Z_AXIS, 1.0), 0.6),
        )


def test_quantum_case_via_degenerate_cap():
    # epsilon = 1: conditioning pins the state to the axis point.
    for alpha in (0.0, math.pi / 3, math.pi / 2, 2.5):
        r = conditional_quad(symmetric_query(1.0, alpha))
        assert r.value == pytest.approx(math.cos(alpha / 2) ** 2, abs=1e-12)


def test_classical_case_is_linear_in_the_angle():
    for alpha in (0.3, math.pi / 2, 2.6):
        r = conditional_quad(symmetric_query(1e-6, alpha))
        assert r.value == pytest.approx(1 - alpha / math.pi, abs=1e-3)


def test_flagship_values():
    p_near = conditional_quad(symmetric_query(SQ2, math.pi / 3), 1e-8).value
    p_far = conditional_quad(symmetric_query(SQ2, 2 * math.pi / 3), 1e-8).value
    assert p_near == pytest.approx(0.78, abs=0.01)
    assert p_far == pytest.approx(0.22, abs=0.01)
    assert p_near + p_far == pytest.approx(1.0, abs=1e-7)


def test_same_axis_same_outcome_is_certain():
    q = ConditionalQuery(
        target=EpsilonExperiment(Z_AXIS, SQ2),
        cond=EpsilonExperiment(Z_AXIS, SQ2),
    )
    assert conditional_quad(q).value == 1.0
    assert conditional_mc(q, 10_000, 3).value == 1.0


def test_complement_law_quadrature():
    for eps, alpha in ((0.4, 1.1), (SQ2, 2.2), (0.9, 0.5)):
        p1 = conditional_quad(symmetric_query(eps, alpha, target_outcome=Outcome.O1)).value
        p2 = conditional_quad(symmetric_query(eps, alpha, target_outcome=Outcome.O2)).value
        assert p1 + p2 == pytest.approx(1.0, abs=1e-7)


def test_complement_law_monte_carlo_same_seed():
    q1 = symmetric_query(0.6, 1.3, target_outcome=Outcome.O1)
    q2 = symmetric_query(0.6, 1.3, target_outcome=Outcome.O2)
    a = conditional_mc(q1, 50_000, 9)
    b = conditional_mc(q2, 50_000, 9)
    assert a.value + b.value == pytest.approx(1.0, abs=1e-12)


def test_antipodal_symmetry():
    for k in range(0, 21):
        alpha = math.pi * k / 20
        p = conditional_quad(symmetric_query(0.55, alpha), 1e-9).value
        q = conditional_quad(symmetric_query(0.55, math.pi - alpha), 1e-9).value
        assert p + q == pytest.approx(1.0, abs=1e-7)


def test_monte_carlo_agrees_with_quadrature():
    rng = np.random.default_rng(21)
    for i in range(10):
        eps = rng.uniform(0.05, 1.0)
        alpha = rng.uniform(0.1, math.pi - 0.1)
        q = symmetric_query(eps, alpha)
        exact = conditional_quad(q).value
        mc = conditional_mc(q, 20_000, seed=100 + i)
        assert abs(mc.value - exact) <= 4 * max(mc.error_bound, 1e-9)


def test_monte_carlo_validates_trials():
    with pytest.raises(ValueError):
        conditional_mc(symmetric_query(0.5, 1.0), 0, seed=1)


def test_closed_form_quantum_branch():
    for alpha in (0.2, 1.0, 2.0, 3.0):
        r = conditional_closed_form(1.0, alpha)
        assert r.validity is Validity.VALID
        assert r.value == pytest.approx(math.cos(alpha / 2) ** 2, abs=1e-12)


def test_closed_form_classical_limit():
    for alpha in (0.4, 1.5, 2.7):
        r = conditional_closed_form(1e-4, alpha)
        assert r.validity is Validity.VALID
        assert r.value == pytest.approx(1 - alpha / math.pi, abs=1e-3)


def test_closed_form_matches_quadrature_in_valid_regimes():
    # One point in each single-gate regime.
    cases = [(0.3, 0.4), (0.3, 1.2), (0.85, 1.5), (SQ2, math.pi / 3), (0.2, 2.0)]
    for eps, alpha in cases:
        cf = conditional_closed_form(eps, alpha)
        assert cf.validity is Validity.VALID
        ref = conditional_quad(symmetric_query(eps, alpha), 1e-10).value
        assert cf.value == pytest.approx(ref, abs=1e-8)


def test_closed_form_flagship_overlap_diagnosis():
    r = conditional_closed_form(SQ2, 2 * math.pi / 3)
    assert r.validity is Validity.REGIME_OVERLAP
    assert math.isnan(r.value)
    assert r.diagnostics["gate_p1"] == 1.0 and r.diagnostics["gate_p3"] == 1.0
    assert r.diagnostics["h_eps_minus_cos_half"] > 0.0
    assert r.diagnostics["h_sin_half_minus_eps"] > 0.0
    assert r.diagnostics["radicand_uw"] < 0.0


def test_closed_form_error_bound_against_quadrature():
    r = conditional_closed_form(0.5, 1.0, quad_tol=1e-9)
    assert r.error_bound <= 1e-6


def test_closed_form_domain_validation():
    with pytest.raises(ValueError):
        conditional_closed_form(0.0, 1.0)
    with pytest.raises(ValueError):
        conditional_closed_form(0.5, 3.5)


def test_continuity_in_epsilon():
    alpha = 1.0
    grid = np.linspace(0.05, 1.0, 96)  # spacing 0.01
    values = [conditional_quad(symmetric_query(e, alpha), 1e-6).value for e in grid]
    jumps = np.abs(np.diff(values))
    assert jumps.max() <= 0.02


def test_sweep_table_shape_and_order():
    rows = sweep([1.0, 0.25], alpha_steps=9, tol=1e-8, mc_trials=2_000, seed=4)
    assert len(rows) == 18
    assert [r.epsilon for r in rows[:9]] == [0.25] * 9  # sorted by epsilon
    alphas = [r.alpha for r in rows[:9]]
    assert alphas == sorted(alphas) and alphas[0] == 0.0 and alphas[-1] == pytest.approx(math.pi)


def test_sweep_quantum_rows_and_monotonicity():
    rows = sweep([1.0, 0.5], alpha_steps=19, tol=1e-8, mc_trials=1_000, seed=4)
    for r in rows:
        if r.epsilon == 1.0:
            assert r.p_quad == pytest.approx(math.cos(r.alpha / 2) ** 2, abs=1e-6)
    for eps in (0.5, 1.0):
        vals = [r.p_quad for r in rows if r.epsilon == eps]
        assert all(a >= b - 1e-9 for a, b in zip(vals, vals[1:]))


def test_sweep_is_deterministic():
    a = sweep([0.7], alpha_steps=5, mc_trials=1_000, seed=12)
    b = sweep([0.7], alpha_steps=5, mc_trials=1_000, seed=12)
    assert a == b


def test_sweep_validates_steps():
    with pytest.raises(ValueError):
        sweep([0.5], alpha_steps=1)


def test_sweep_handles_zero_band():
    rows = sweep([0.0], alpha_steps=5, mc_trials=200, seed=1)
    for r in rows:
        assert r.p_quad == pytest.approx(1 - r.alpha / math.pi, abs=1e-7)
        assert math.isnan(r.p_closed_form) and r.validity == "domain-invalid"
