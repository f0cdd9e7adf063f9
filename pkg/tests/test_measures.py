import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qmachine.errors import ConditioningError
from qmachine.geometry import (
    SectorCap,
    Z_AXIS,
    cap_area_fraction,
    cap_intersection_fraction,
    sample_uniform_sphere,
    unit_vector_at_angle,
)
from qmachine.machine import EpsilonExperiment
from qmachine.measures import (
    EMPTY,
    CapUniform,
    Mixture,
    OutcomeSet,
    Uniform,
    condition,
    eig_set,
    is_classical,
    measure_of,
    outcome_probability_mixed,
    pos_set,
    sandwich_check,
)

SQ2 = math.sqrt(2) / 2


def experiment(epsilon, d=0.0, axis=Z_AXIS):
    return EpsilonExperiment(axis, epsilon, d)


def test_eig_set_shapes():
    cap = eig_set(experiment(1.0), OutcomeSet.O1)
    assert cap.center == Z_AXIS and cap.half_angle == 0.0 and cap.closed
    cap = eig_set(experiment(0.0), OutcomeSet.O1)
    assert cap.half_angle == pytest.approx(math.pi / 2) and not cap.closed
    cap = eig_set(experiment(SQ2), OutcomeSet.O1)
    assert cap.half_angle == pytest.approx(math.pi / 4, abs=1e-12)
    cap = eig_set(experiment(0.4, 0.1), OutcomeSet.O2)
    assert cap.center == -Z_AXIS and cap.half_angle == pytest.approx(math.acos(0.3), abs=1e-12)


def test_pos_set_shapes():
    cap = pos_set(experiment(1.0), OutcomeSet.O1)
    assert cap.half_angle == pytest.approx(math.pi) and not cap.closed
    cap = pos_set(experiment(0.0, 0.3), OutcomeSet.O1)
    assert cap.half_angle == pytest.approx(math.acos(0.3), abs=1e-12) and cap.closed


def test_both_and_neither():
    e = experiment(0.5)
    assert eig_set(e, OutcomeSet.BOTH).area_fraction == pytest.approx(1.0)
    assert eig_set(e, OutcomeSet.NEITHER) is EMPTY
    assert measure_of(Uniform(), EMPTY) == 0.0


@st.composite
def epsilon_d(draw):
    epsilon = draw(st.floats(0.0, 1.0))
    d = draw(st.floats(-1.0 + epsilon, 1.0 - epsilon))
    return epsilon, d


@given(epsilon_d())
def test_certainty_inside_possibility(params):
    epsilon, d = params
    e = experiment(epsilon, d)
    for a in (OutcomeSet.O1, OutcomeSet.O2):
        assert eig_set(e, a).half_angle <= pos_set(e, a).half_angle + 1e-12


def test_uniform_measures_of_certainty_regions():
    assert measure_of(Uniform(), eig_set(experiment(1.0), OutcomeSet.O1)) == 0.0
    assert measure_of(Uniform(), pos_set(experiment(1.0), OutcomeSet.O1)) == pytest.approx(1.0)
    for d in (-0.4, 0.0, 0.25):
        assert measure_of(Uniform(), eig_set(experiment(0.0, d), OutcomeSet.O1)) == pytest.approx(
            (1 - d) / 2, abs=1e-12
        )


def test_cap_uniform_measure():
    cap = SectorCap(Z_AXIS, 1.0)
    mu = CapUniform(cap)
    assert measure_of(mu, cap) == pytest.approx(1.0, abs=1e-9)
    inner = SectorCap(Z_AXIS, 0.5)
    expected = cap_area_fraction(0.5) / cap_area_fraction(1.0)
    assert measure_of(mu, inner) == pytest.approx(expected, abs=1e-9)


def test_mixture_measure_is_linear():
    cap_a = SectorCap(Z_AXIS, 1.2)
    mu = Mixture(((0.25, Uniform()), (0.75, CapUniform(cap_a))))
    region = SectorCap(Z_AXIS, 0.7)
    expected = 0.25 * measure_of(Uniform(), region) + 0.75 * measure_of(CapUniform(cap_a), region)
    assert measure_of(mu, region) == pytest.approx(expected, abs=1e-9)


def test_mixture_weight_validation():
    with pytest.raises(ValueError):
        Mixture(((0.6, Uniform()), (0.6, Uniform())))


def test_uniform_outcome_probability_is_epsilon_independent():
    for epsilon in (0.0, 0.3, SQ2, 1.0):
        d_max = 1 - epsilon
        for d in (-d_max, 0.0, d_max / 2):
            e = experiment(epsilon, d)
            assert outcome_probability_mixed(e, OutcomeSet.O1, Uniform()) == pytest.approx(
                (1 - d) / 2, abs=1e-12
            )
            assert outcome_probability_mixed(e, OutcomeSet.O2, Uniform()) == pytest.approx(
                (1 + d) / 2, abs=1e-12
            )


def test_cap_uniform_outcome_probability_complement():
    e = experiment(0.6, 0.1, axis=unit_vector_at_angle(Z_AXIS, 1.1))
    mu = CapUniform(SectorCap(Z_AXIS, 0.8))
    p1 = outcome_probability_mixed(e, OutcomeSet.O1, mu)
    p2 = outcome_probability_mixed(e, OutcomeSet.O2, mu)
    assert p1 + p2 == pytest.approx(1.0, abs=1e-8)


def test_sandwich_quantum_uniform():
    r = sandwich_check(experiment(1.0), OutcomeSet.O1, Uniform())
    assert (r.lower, r.mid, r.upper) == (0.0, 0.5, 1.0)
    assert r.holds


def test_sandwich_classical_collapses():
    for d in (-0.3, 0.0, 0.5):
        r = sandwich_check(experiment(0.0, d), OutcomeSet.O1, Uniform())
        assert r.holds
        assert abs(r.lower - r.mid) <= 1e-9 and abs(r.mid - r.upper) <= 1e-9
        assert r.mid == pytest.approx((1 - d) / 2, abs=1e-9)


def test_sandwich_neither_outcome():
    r = sandwich_check(experiment(0.5), OutcomeSet.NEITHER, Uniform())
    assert (r.lower, r.mid, r.upper) == (0.0, 0.0, 0.0) and r.holds


def test_sandwich_classical_collapses_on_cap_uniform():
    mu = CapUniform(SectorCap(unit_vector_at_angle(Z_AXIS, 0.6), 1.3))
    for d in (-0.2, 0.4):
        r = sandwich_check(experiment(0.0, d), OutcomeSet.O1, mu)
        assert r.holds
        assert abs(r.lower - r.mid) <= 1e-7 and abs(r.mid - r.upper) <= 1e-7


def test_sandwich_random_instances():
    rng = np.random.default_rng(13)
    for _ in range(60):
        epsilon = rng.uniform(0.0, 1.0)
        d = rng.uniform(-1 + epsilon, 1 - epsilon)
        e = experiment(epsilon, d, axis=sample_uniform_sphere(rng))
        kind = rng.integers(0, 3)
        if kind == 0:
            mu = Uniform()
        elif kind == 1:
            mu = CapUniform(SectorCap(sample_uniform_sphere(rng), rng.uniform(0.2, math.pi)))
        else:
            w = rng.uniform(0.2, 0.8)
            mu = Mixture(
                (
                    (w, CapUniform(SectorCap(sample_uniform_sphere(rng), rng.uniform(0.2, math.pi)))),
                    (1 - w, Uniform()),
                )
            )
        a = OutcomeSet.O1 if rng.integers(0, 2) else OutcomeSet.O2
        assert sandwich_check(e, a, mu).holds


def test_is_classical():
    assert is_classical(experiment(0.0, 0.2), Uniform())
    assert not is_classical(experiment(1.0), Uniform())
    assert not is_classical(experiment(0.5), Uniform())


def test_condition_uniform_gives_cap_uniform():
    f = experiment(SQ2, 0.0, axis=unit_vector_at_angle(Z_AXIS, 0.4))
    mu = condition(Uniform(), f, OutcomeSet.O1)
    assert isinstance(mu, CapUniform)
    assert mu.cap.center == f.axis
    assert mu.cap.half_angle == pytest.approx(math.pi / 4, abs=1e-12)


def test_condition_is_idempotent():
    f = experiment(0.5, 0.1)
    once = condition(Uniform(), f, OutcomeSet.O1)
    twice = condition(once, f, OutcomeSet.O1)
    assert once == twice


def test_condition_zero_measure_raises():
    with pytest.raises(ConditioningError):
        condition(Uniform(), experiment(1.0), OutcomeSet.O1)
    with pytest.raises(ConditioningError):
        condition(Uniform(), experiment(0.5), OutcomeSet.NEITHER)


def test_condition_partial_overlap_unsupported():
    mu = CapUniform(SectorCap(unit_vector_at_angle(Z_AXIS, 1.5), 0.8))
    f = experiment(0.3, 0.0)  # certainty cap of half-angle ~1.266 around Z
    with pytest.raises(ConditioningError):
        condition(mu, f, OutcomeSet.O1)


def test_condition_mixture_reweights():
    f = experiment(0.2, 0.0)
    cap_in = SectorCap(Z_AXIS, 0.5)  # inside the certainty cap
    mu = Mixture(((0.5, CapUniform(cap_in)), (0.5, Uniform())))
    cond = condition(mu, f, OutcomeSet.O1)
    assert isinstance(cond, Mixture)
    weights = [w for w, _ in cond.components]
    assert sum(weights) == pytest.approx(1.0, abs=1e-12)
    # The cap component is entirely inside the conditioning region, so its
    # weight grows relative to the uniform one.
    assert weights[0] > 0.5


def test_bayes_formula_for_classical_experiments():
    # For zero-band experiments, P(a_e | conditioned on a_f) * mu(eig_f)
    # equals the overlap measure of the two certainty caps.
    rng = np.random.default_rng(14)
    for _ in range(8):
        d_e = rng.uniform(-0.7, 0.7)
        d_f = rng.uniform(-0.7, 0.7)
        e = experiment(0.0, d_e, axis=unit_vector_at_angle(Z_AXIS, rng.uniform(0.2, 2.9)))
        f = experiment(0.0, d_f)
        mu_f = condition(Uniform(), f, OutcomeSet.O1)
        lhs = outcome_probability_mixed(e, OutcomeSet.O1, mu_f) * measure_of(
            Uniform(), eig_set(f, OutcomeSet.O1)
        )
        rhs = cap_intersection_fraction(eig_set(e, OutcomeSet.O1), eig_set(f, OutcomeSet.O1))
        assert lhs == pytest.approx(rhs, abs=1e-6)
