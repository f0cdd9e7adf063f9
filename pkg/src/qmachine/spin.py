"""Spin-1/2 representation of the maximal-band machine.

The epsilon = 1 experiment reproduces the transition probabilities of a
spin measurement on a two-level system, so this module provides the state
vector and observable for any direction and the |<.,.>|^2 transition
probability as an independent crosscheck.  Everything is fixed-size 2x2
complex arithmetic on builtin scalars.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .geometry import UnitVector


@dataclass(frozen=True)
class SpinState:
    """Normalized amplitudes on the polar basis (up = +axis pole)."""

    up: complex
    down: complex

    def __post_init__(self) -> None:
        n = abs(self.up) ** 2 + abs(self.down) ** 2
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"amplitudes have norm^2 {n}, expected 1")


@dataclass(frozen=True)
class SpinObservable:
    """Traceless Hermitian 2x2 matrix with eigenvalues +-1/2."""

    rows: tuple[tuple[complex, complex], tuple[complex, complex]]

    def __post_init__(self) -> None:
        (a, b), (c, d) = self.rows
        if abs(a - a.conjugate()) > 1e-12 or abs(d - d.conjugate()) > 1e-12 or abs(b - c.conjugate()) > 1e-12:
            raise ValueError("matrix is not Hermitian")
        if abs(a + d) > 1e-12:
            raise ValueError("matrix is not traceless")

    def apply(self, s: SpinState) -> tuple[complex, complex]:
        (a, b), (c, d) = self.rows
        return a * s.up + b * s.down, c * s.up + d * s.down


def spin_state(v: UnitVector) -> SpinState:
    """State vector for the direction v = (sin t cos p, sin t sin p, cos t):
    (e^{-ip/2} cos(t/2), e^{ip/2} sin(t/2)), azimuth fixed to 0 at the poles."""
    polar, azimuth = v.to_spherical()
    half_phase = cmath.exp(-0.5j * azimuth)
    return SpinState(half_phase * math.cos(0.5 * polar), half_phase.conjugate() * math.sin(0.5 * polar))


def spin_operator(u: UnitVector) -> SpinObservable:
    """Observable (1/2) [[cos t, e^{-ip} sin t], [e^{ip} sin t, -cos t]]."""
    polar, azimuth = u.to_spherical()
    off = cmath.exp(-1j * azimuth) * math.sin(polar)
    return SpinObservable(
        (
            (0.5 * math.cos(polar), 0.5 * off),
            (0.5 * off.conjugate(), -0.5 * math.cos(polar)),
        )
    )


def inner(a: SpinState, b: SpinState) -> complex:
    return a.up.conjugate() * b.up + a.down.conjugate() * b.down


def transition_probability(u: UnitVector, v: UnitVector) -> float:
    """|<state(u), state(v)>|^2; equals cos^2(angle(u, v) / 2)."""
    return abs(inner(spin_state(u), spin_state(v))) ** 2
