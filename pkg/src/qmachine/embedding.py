"""Exact feasibility checks for a triad of marginals and conditionals.

check_kolmogorov asks whether one joint probability space over three
events can reproduce the given marginals and Bayes-rule conditionals; the
unknowns are the eight atom probabilities of the U/V/W sign table, and
feasibility is decided by exact Fourier-Motzkin elimination over
rationals.  Infeasible instances come with a certificate: a pair of
implied bounds on a single atom that contradict each other.

check_hilbert2d asks whether the symmetric transition-probability table
(all cyclically adjacent pairs gamma^2, all skew pairs delta^2) can be
realized by three orthonormal bases of a 2-D complex inner-product space;
the five relative phases collapse to one solvability condition on a
cosine.

Everything here is exact rational arithmetic: the interesting verdicts
hinge on strict inequality gaps, and no tolerance should be able to blur
them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

VARIABLES = ("U", "V", "W")
N_ATOMS = 8

RationalLike = Union[Fraction, int, str]

# An event is a variable name with a truth flag: ("U", False) means "not U".
Event = tuple[str, bool]


def to_fraction(value: RationalLike) -> Fraction:
    """Exact conversion; floats are rejected so no silent rounding sneaks in."""
    if isinstance(value, float):
        raise TypeError("pass probabilities as str/Fraction/int so they stay exact")
    return Fraction(value)


def parse_event(text: str) -> Event:
    name = text.strip()
    positive = True
    if name.lower().startswith("not "):
        positive = False
        name = name[4:].strip()
    if name not in VARIABLES:
        raise ValueError(f"unknown event {text!r}; expected one of {VARIABLES} (optionally 'not ...')")
    return name, positive


def event_label(ev: Event) -> str:
    return ev[0] if ev[1] else f"not {ev[0]}"


def atom_label(index: int) -> str:
    bits = [(index >> (2 - i)) & 1 for i in range(3)]
    return " & ".join(name if bit else f"not {name}" for name, bit in zip(VARIABLES, bits))


def _atoms_of(*events: Event) -> list[int]:
    """Atom indices where every listed event holds."""
    out = []
    for idx in range(N_ATOMS):
        ok = True
        for name, positive in events:
            bit = (idx >> (2 - VARIABLES.index(name))) & 1
            if bool(bit) != positive:
                ok = False
                break
        if ok:
            out.append(idx)
    return out


@dataclass(frozen=True)
class CondProb:
    """One conditional constraint: P(event | given) = p."""

    event: Event
    given: Event
    p: Fraction


@dataclass
class TriadData:
    """Marginals of U, V, W plus a map of conditional probabilities.

    All probabilities are exact rationals; decimal inputs should be parsed
    to fractions before they get here.
    """

    marginals: Mapping[str, Fraction]
    conditionals: tuple[CondProb, ...]

    def __post_init__(self) -> None:
        self.marginals = {k: to_fraction(v) for k, v in self.marginals.items()}
        for name in VARIABLES:
            if name not in self.marginals:
                raise ValueError(f"missing marginal for {name}")
        for p in list(self.marginals.values()) + [c.p for c in self.conditionals]:
            if not 0 <= p <= 1:
                raise ValueError(f"probability {p} outside [0, 1]")

    def marginal_of(self, ev: Event) -> Fraction:
        m = self.marginals[ev[0]]
        return m if ev[1] else 1 - m


def paper_triad() -> TriadData:
    """The flagship instance: three half/half experiments whose pairwise
    conditionals are 0.78 / 0.22 / 0.22."""
    half = Fraction(1, 2)
    return TriadData(
        marginals={"U": half, "V": half, "W": half},
        conditionals=(
            CondProb(("V", True), ("W", True), Fraction("0.78")),
            CondProb(("U", True), ("W", True), Fraction("0.22")),
            CondProb(("U", False), ("V", True), Fraction("0.22")),
        ),
    )


@dataclass(frozen=True)
class LinearConstraint:
    """Equality  coeffs . atoms = rhs  over the eight atom probabilities."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    label: str


def joint_constraints(t: TriadData) -> list[LinearConstraint]:
    """Equality constraints over the eight atoms: total mass, marginals, and
    each conditional turned into an intersection mass using the given
    conditioning marginal (atoms are additionally nonnegative)."""
    cons = [LinearConstraint(tuple(Fraction(1) for _ in range(N_ATOMS)), Fraction(1), "total mass")]
    for name in VARIABLES:
        coeffs = [Fraction(0)] * N_ATOMS
        for idx in _atoms_of((name, True)):
            coeffs[idx] = Fraction(1)
        cons.append(LinearConstraint(tuple(coeffs), t.marginals[name], f"marginal {name}"))
    for c in t.conditionals:
        coeffs = [Fraction(0)] * N_ATOMS
        for idx in _atoms_of(c.event, c.given):
            coeffs[idx] = Fraction(1)
        rhs = c.p * t.marginal_of(c.given)
        label = f"P({event_label(c.event)} | {event_label(c.given)}) * P({event_label(c.given)})"
        cons.append(LinearConstraint(tuple(coeffs), rhs, label))
    return cons


# ---------------------------------------------------------------------------
# Exact Fourier-Motzkin elimination.  Rows encode  coeffs . x <= rhs.

Row = tuple[tuple[Fraction, ...], Fraction]


def _canonical(row: Row) -> Row:
    coeffs, rhs = row
    denom_lcm = 1
    for f in list(coeffs) + [rhs]:
        denom_lcm = denom_lcm * f.denominator // math.gcd(denom_lcm, f.denominator)
    ints = [int(f * denom_lcm) for f in coeffs]
    r = int(rhs * denom_lcm)
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g == 0:
        return tuple(coeffs), rhs  # constant row, keep as-is
    return tuple(Fraction(v, g) for v in ints), Fraction(r, g)


def _dedupe(rows: Iterable[Row]) -> list[Row]:
    best: dict[tuple[Fraction, ...], Fraction] = {}
    constants: list[Row] = []
    for row in rows:
        coeffs, rhs = _canonical(row)
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                constants.append((coeffs, rhs))
            continue  # 0 <= rhs >= 0 is vacuous
        if coeffs not in best or rhs < best[coeffs]:
            best[coeffs] = rhs
    return constants + [(c, r) for c, r in best.items()]


def _eliminate(rows: list[Row], var: int) -> tuple[list[Row], list[Row]]:
    """Project the system onto the remaining variables; returns (projected
    rows, the rows that involved `var`, kept for back-substitution)."""
    uppers, lowers, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[var]
        if c > 0:
            uppers.append((coeffs, rhs))
        elif c < 0:
            lowers.append((coeffs, rhs))
        else:
            rest.append((coeffs, rhs))
    combined = []
    for uc, ur in uppers:
        for lc, lr in lowers:
            scale_u = -lc[var]
            scale_l = uc[var]
            coeffs = tuple(scale_u * a + scale_l * b for a, b in zip(uc, lc))
            combined.append((coeffs, scale_u * ur + scale_l * lr))
    return _dedupe(rest + combined), uppers + lowers


def _bounds_on(rows: list[Row], var: int) -> tuple[Optional[Fraction], Optional[Fraction], bool]:
    """(max lower bound, min upper bound, constants_violated) once all rows
    involve only `var`."""
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    violated = False
    for coeffs, rhs in rows:
        c = coeffs[var]
        if c == 0:
            if rhs < 0:
                violated = True
            continue
        bound = rhs / c
        if c > 0:
            upper = bound if upper is None else min(upper, bound)
        else:
            lower = bound if lower is None else max(lower, bound)
    return lower, upper, violated


def _project_to_atom(equalities: list[LinearConstraint], target: int):
    rows: list[Row] = []
    for con in equalities:
        rows.append((con.coeffs, con.rhs))
        rows.append((tuple(-c for c in con.coeffs), -con.rhs))
    for i in range(N_ATOMS):
        coeffs = tuple(Fraction(-1) if j == i else Fraction(0) for j in range(N_ATOMS))
        rows.append((coeffs, Fraction(0)))
    rows = _dedupe(rows)
    stack = []
    violated = False
    for var in range(N_ATOMS):
        if var == target:
            continue
        rows, used = _eliminate(rows, var)
        stack.append((var, used))
        violated = violated or any(all(c == 0 for c in coeffs) and rhs < 0 for coeffs, rhs in rows)
    lower, upper, const_bad = _bounds_on(rows, target)
    return lower, upper, violated or const_bad, stack


def _back_substitute(stack, target: int, target_value: Fraction) -> tuple[Fraction, ...]:
    values: dict[int, Fraction] = {target: target_value}
    for var, used_rows in reversed(stack):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, rhs in used_rows:
            rest = sum((coeffs[i] * values[i] for i in range(N_ATOMS) if i != var and coeffs[i] != 0), Fraction(0))
            bound = (rhs - rest) / coeffs[var]
            if coeffs[var] > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is not None and hi is not None:
            values[var] = (lo + hi) / 2
        elif lo is not None:
            values[var] = max(lo, Fraction(0))
        elif hi is not None:
            values[var] = min(hi, Fraction(0))
        else:
            values[var] = Fraction(0)
    return tuple(values[i] for i in range(N_ATOMS))


@dataclass(frozen=True)
class Certificate:
    """Contradictory implied bounds: every joint would need
    lower <= expression <= upper with lower > upper."""

    lower: Fraction
    upper: Fraction
    expression: str


@dataclass(frozen=True)
class KolmogorovVerdict:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]] = None
    certificate: Optional[Certificate] = None


# The atom the flagship contradiction lives on: not-U & V & W.
_PAPER_TARGET = 0b011


def check_kolmogorov(t: TriadData) -> KolmogorovVerdict:
    """Exact feasibility of a joint distribution reproducing the triad.

    Eliminates atoms so that the not-U & V & W atom survives last, matching
    the order of the flagship derivation; its implied bound pair is the
    certificate when contradictory.
    """
    equalities = joint_constraints(t)
    lower, upper, violated, stack = _project_to_atom(equalities, _PAPER_TARGET)
    if lower is not None and upper is not None and lower > upper:
        return KolmogorovVerdict(False, certificate=Certificate(lower, upper, atom_label(_PAPER_TARGET)))
    if violated:
        for alt in range(N_ATOMS):
            if alt == _PAPER_TARGET:
                continue
            lo, up, _, _ = _project_to_atom(equalities, alt)
            if lo is not None and up is not None and lo > up:
                return KolmogorovVerdict(False, certificate=Certificate(lo, up, atom_label(alt)))
        return KolmogorovVerdict(False, certificate=Certificate(Fraction(1), Fraction(0), "0 (constant contradiction)"))
    assert lower is not None and upper is not None  # total mass bounds every atom
    witness = _back_substitute(stack, _PAPER_TARGET, (lower + upper) / 2)
    for con in equalities:
        assert sum(c * x for c, x in zip(con.coeffs, witness)) == con.rhs, con.label
    assert all(x >= 0 for x in witness)
    return KolmogorovVerdict(True, witness=witness)


@dataclass(frozen=True)
class HilbertVerdict:
    feasible: bool
    gamma2: Fraction
    delta2: Fraction
    required_cosine: Fraction


def check_hilbert2d(gamma2: RationalLike) -> HilbertVerdict:
    """Solvability of the symmetric three-basis configuration in 2-D.

    With adjacent transition probabilities gamma^2 and skew ones
    delta^2 = 1 - gamma^2, the relative phases must satisfy
    cos(phase) = (delta^2 - delta^4 - gamma^4) / (2 delta^2 gamma^2),
    which simplifies to (1 - 2 g) / (2 (1 - g)).  Feasible iff that
    cosine lies in [-1, 1], i.e. gamma^2 <= 3/4.
    """
    g = to_fraction(gamma2)
    if g <= 0 or g >= 1:
        raise ValueError("gamma^2 must lie strictly between 0 and 1")
    d = 1 - g
    required = (d - d * d - g * g) / (2 * d * g)
    return HilbertVerdict(abs(required) <= 1, g, d, required)


class ModelClass(enum.Enum):
    KOLMOGOROVIAN = "kolmogorovian"
    HILBERTIAN_2D = "hilbertian-2d"
    BOTH = "both"
    NEITHER = "neither"


def classify(t: TriadData, gamma2: RationalLike) -> ModelClass:
    """Combine the two feasibility verdicts."""
    k = check_kolmogorov(t).feasible
    h = check_hilbert2d(gamma2).feasible
    if k and h:
        return ModelClass.BOTH
    if k:
        return ModelClass.KOLMOGOROVIAN
    if h:
        return ModelClass.HILBERTIAN_2D
    return ModelClass.NEITHER
