"""The breakable-band experiment on the sphere.

An experiment is a band of half-width epsilon around offset d on the axis
through u and -u: the strip where the elastic can break, uniformly.  The
particle at v projects onto the axis at x = v . u; a break strictly below
the projection pulls the particle up to u (outcome 1), otherwise it ends
at -u (outcome 2).  epsilon = 1 reproduces the spin-1/2 probabilities,
epsilon = 0 a deterministic classical experiment.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import UnitVector


class Outcome(enum.Enum):
    O1 = "o1"  # particle pulled to the axis point
    O2 = "o2"  # particle pulled to the antipode

    def flipped(self) -> "Outcome":
        return Outcome.O2 if self is Outcome.O1 else Outcome.O1


@dataclass(frozen=True)
class EpsilonExperiment:
    """Axis u plus band parameters epsilon in [0, 1], d in [-1+eps, 1-eps]."""

    axis: UnitVector
    epsilon: float
    d: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon {self.epsilon} outside [0, 1]")
        if not -1.0 + self.epsilon - 1e-15 <= self.d <= 1.0 - self.epsilon + 1e-15:
            raise ValueError(f"d {self.d} outside [-1 + epsilon, 1 - epsilon]")

    @property
    def band_low(self) -> float:
        return self.d - self.epsilon

    @property
    def band_high(self) -> float:
        return self.d + self.epsilon

    def flipped(self) -> "EpsilonExperiment":
        """Same experiment with outcome labels swapped (axis and d negated)."""
        return EpsilonExperiment(-self.axis, self.epsilon, -self.d)


@dataclass(frozen=True)
class OutcomeDistribution:
    p1: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p1 <= 1.0:
            raise ValueError(f"p1 {self.p1} outside [0, 1]")

    @property
    def p2(self) -> float:
        return 1.0 - self.p1


@dataclass(frozen=True)
class TrialResult:
    outcome: Outcome
    post_state: UnitVector
    break_point: float  # the hidden variable: where the band broke


def p1_given_projection(e: EpsilonExperiment, x: float) -> float:
    """Probability of outcome 1 as a function of the projection x = v . u.

    Clamped-linear ramp across the band for epsilon > 0; a step at d for
    epsilon = 0, with the measure-zero tie x = d split evenly.
    """
    if e.epsilon == 0.0:
        if x > e.d:
            return 1.0
        if x < e.d:
            return 0.0
        return 0.5
    if x <= e.band_low:
        return 0.0
    if x >= e.band_high:
        return 1.0
    return (x - e.d + e.epsilon) / (2.0 * e.epsilon)


def outcome_probabilities(e: EpsilonExperiment, state: UnitVector) -> OutcomeDistribution:
    return OutcomeDistribution(p1_given_projection(e, state.dot(e.axis)))


def run_trial(e: EpsilonExperiment, state: UnitVector, rng: np.random.Generator) -> TrialResult:
    """One seeded measurement: draw the hidden break point, collapse the state."""
    x = state.dot(e.axis)
    if e.epsilon == 0.0:
        break_point = e.d
        if x > e.d:
            up = True
        elif x < e.d:
            up = False
        else:
            up = bool(rng.integers(0, 2))
    else:
        break_point = rng.uniform(e.band_low, e.band_high)
        up = break_point < x
    if up:
        return TrialResult(Outcome.O1, e.axis, break_point)
    return TrialResult(Outcome.O2, -e.axis, break_point)


def estimate_probability_mc(
    e: EpsilonExperiment, state: UnitVector, n: int, seed: int
) -> tuple[float, float]:
    """Outcome-1 frequency over n seeded trials, with its standard error.

    Trials are drawn in one vectorized pass; each is the same uniform break
    plus comparison that run_trial performs.
    """
    if n < 1:
        raise ValueError("trial count must be at least 1")
    rng = np.random.default_rng(seed)
    x = state.dot(e.axis)
    if e.epsilon == 0.0:
        if x > e.d:
            hits = n
        elif x < e.d:
            hits = 0
        else:
            hits = int(rng.integers(0, 2, n).sum())
    else:
        breaks = rng.uniform(e.band_low, e.band_high, n)
        hits = int(np.count_nonzero(breaks < x))
    p_hat = hits / n
    return p_hat, math.sqrt(p_hat * (1.0 - p_hat) / n)
