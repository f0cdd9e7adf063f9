"""Command-line front end.

Subcommands: prob (exact outcome probabilities), simulate (seeded trial
frequencies), conditional (the three routes), sweep (CSV table over
alpha), check (exact embeddability verdicts), survey (poll pipeline).

Exit codes: 0 for any successfully computed result, including infeasible
verdicts; 2 for usage errors; 3 for domain errors (a well-formed request
the model cannot answer).  Stochastic outputs embed their seed, trial
count and version, and rerunning with the same flags is byte-identical.
The seed default comes from QMACHINE_SEED when set.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .conditional import (
    ConditionalQuery,
    conditional_closed_form,
    conditional_mc,
    conditional_quad,
    sweep,
)
from .embedding import (
    CondProb,
    HilbertVerdict,
    KolmogorovVerdict,
    TriadData,
    atom_label,
    check_hilbert2d,
    check_kolmogorov,
    classify,
    parse_event,
)
from .errors import DomainError
from .geometry import Z_AXIS, unit_vector_at_angle
from .machine import EpsilonExperiment, estimate_probability_mc, outcome_probabilities
from .survey import QuestionStats, build_survey_model, classify_survey, predict_conditionals, region_census

USAGE_ERROR = 2
DOMAIN_ERROR = 3


def _default_seed() -> int:
    return int(os.environ.get("QMACHINE_SEED", "0"))


def _sanitize(value):
    """Strict JSON has no NaN/Infinity; map them to null / signed strings."""
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("Infinity" if value > 0 else "-Infinity")
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    return value


def _emit(payload: dict) -> None:
    print(json.dumps(_sanitize(payload)))


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _state_projection(args) -> float:
    if args.x is not None and args.theta is not None:
        raise ValueError("give either --theta or --x, not both")
    if args.x is not None:
        if not -1.0 <= args.x <= 1.0:
            raise ValueError("--x must lie in [-1, 1]")
        return args.x
    if args.theta is None:
        raise ValueError("one of --theta or --x is required")
    return math.cos(_angle(args.theta, args.degrees))


def _cmd_prob(args) -> int:
    x = _state_projection(args)
    e = EpsilonExperiment(Z_AXIS, args.epsilon, args.d)
    dist = outcome_probabilities(e, unit_vector_at_angle(Z_AXIS, math.acos(x)))
    _emit({"epsilon": args.epsilon, "d": args.d, "x": x, "p1": dist.p1, "p2": dist.p2})
    return 0


def _cmd_simulate(args) -> int:
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    x = _state_projection(args)
    e = EpsilonExperiment(Z_AXIS, args.epsilon, args.d)
    estimate, stderr = estimate_probability_mc(e, unit_vector_at_angle(Z_AXIS, math.acos(x)), args.trials, args.seed)
    _emit(
        {
            "epsilon": args.epsilon,
            "d": args.d,
            "x": x,
            "estimate": estimate,
            "std_error": stderr,
            "trials": args.trials,
            "seed": args.seed,
            "version": __version__,
        }
    )
    return 0


def _cmd_conditional(args) -> int:
    alpha = _angle(args.alpha, args.degrees)
    if not 0.0 <= alpha <= math.pi:
        raise ValueError("alpha must lie in [0, pi] (after unit conversion)")
    payload = {"epsilon": args.epsilon, "alpha": alpha, "d": args.d, "c": args.c, "method": args.method}
    if args.method == "formula":
        if args.d != 0.0 or args.c != 0.0:
            raise ValueError("the closed form is defined for d = c = 0 only")
        result = conditional_closed_form(args.epsilon, alpha, quad_tol=args.tol)
        payload["diagnostics"] = result.diagnostics
    else:
        query = ConditionalQuery(
            target=EpsilonExperiment(unit_vector_at_angle(Z_AXIS, alpha), args.epsilon, args.d),
            cond=EpsilonExperiment(Z_AXIS, args.epsilon, args.c),
        )
        if args.method == "quad":
            result = conditional_quad(query, args.tol)
        else:
            result = conditional_mc(query, args.trials, args.seed)
            payload.update(trials=args.trials, seed=args.seed, version=__version__)
    payload.update(value=result.value, error_bound=result.error_bound, validity=result.validity.value)
    _emit(payload)
    return 0


def _cmd_sweep(args) -> int:
    epsilons = [float(tok) for tok in args.epsilons.split(",") if tok.strip()]
    if not epsilons:
        raise ValueError("--epsilons needs at least one value")
    rows = sweep(epsilons, args.alpha_steps, args.tol, args.mc_trials, args.seed)
    header = ["epsilon", "alpha", "p_quad", "p_closed_form", "validity", "p_mc", "mc_stderr"]

    def write(stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for r in rows:
            writer.writerow([repr(r.epsilon), repr(r.alpha), repr(r.p_quad), repr(r.p_closed_form), r.validity, repr(r.p_mc), repr(r.mc_stderr)])

    summary = {
        "rows": len(rows),
        "seed": args.seed,
        "mc_trials": args.mc_trials,
        "out": args.out,
        "version": __version__,
    }
    if args.out == "-":
        write(sys.stdout)
        print(json.dumps(summary), file=sys.stderr)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            write(fh)
        _emit(summary)
    return 0


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 else str(f.numerator)


def _load_triad(path: str) -> TriadData:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh, parse_float=Fraction, parse_int=Fraction)
    marginals = {str(k): Fraction(v) for k, v in raw["marg"].items()}
    conds = tuple(
        CondProb(parse_event(str(c["event"])), parse_event(str(c["given"])), Fraction(c["p"]))
        for c in raw["cond"]
    )
    return TriadData(marginals, conds)


def _kolmogorov_payload(verdict: KolmogorovVerdict) -> dict:
    payload: dict = {"kolmogorov": "feasible" if verdict.feasible else "infeasible"}
    if verdict.witness is not None:
        payload["witness"] = {atom_label(i): _fraction_str(x) for i, x in enumerate(verdict.witness)}
    if verdict.certificate is not None:
        payload["certificate"] = {
            "lower": _fraction_str(verdict.certificate.lower),
            "upper": _fraction_str(verdict.certificate.upper),
            "expression": verdict.certificate.expression,
        }
    return payload


def _hilbert_payload(verdict: HilbertVerdict) -> dict:
    return {
        "hilbert2d": "feasible" if verdict.feasible else "infeasible",
        "gamma2": _fraction_str(verdict.gamma2),
        "delta2": _fraction_str(verdict.delta2),
        "required_cosine": _fraction_str(verdict.required_cosine),
        "required_cosine_decimal": float(verdict.required_cosine),
    }


def _cmd_check(args) -> int:
    if args.kind == "kolmogorov":
        _emit(_kolmogorov_payload(check_kolmogorov(_load_triad(args.triad))))
    elif args.kind == "hilbert":
        _emit(_hilbert_payload(check_hilbert2d(Fraction(args.gamma2))))
    else:
        triad = _load_triad(args.triad)
        gamma2 = Fraction(args.gamma2)
        payload = {
            "classification": classify(triad, gamma2).value,
            "kolmogorov": _kolmogorov_payload(check_kolmogorov(triad)),
            "hilbert2d": _hilbert_payload(check_hilbert2d(gamma2)),
        }
        _emit(payload)
    return 0


def _load_survey(path: str) -> tuple[list[QuestionStats], list[float]]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    stats = [
        QuestionStats(
            label=str(q["label"]),
            yes_fraction=float(q["yes"]),
            predetermined_yes=float(q["pre_yes"]),
            predetermined_no=float(q["pre_no"]),
        )
        for q in raw["questions"]
    ]
    angles = [math.radians(float(a)) for a in raw["angles_deg"]]
    return stats, angles


def _cmd_survey(args) -> int:
    stats, angles = _load_survey(args.input)
    model = build_survey_model(stats, angles, force_epsilon=args.force_epsilon)
    census = region_census(model, args.census_trials, args.seed)
    outcome = classify_survey(model)
    payload = {
        "epsilon": model.epsilon,
        "forced_epsilon": args.force_epsilon,
        "questions": [
            {
                "label": fq.label,
                "angle_deg": math.degrees(fq.angle),
                "epsilon": fq.experiment.epsilon,
                "d": fq.experiment.d,
                "predicted_yes_rate": fq.diagnostics.predicted_yes_rate,
                "yes_rate_mismatch": fq.diagnostics.yes_rate_mismatch,
                "flagged": fq.diagnostics.flagged,
            }
            for fq in model.questions
        ],
        "conditionals": [
            {
                "target": row.target,
                "given": row.given,
                "angle": row.angle,
                "yes_given_yes": row.yes_given_yes,
                "no_given_yes": row.no_given_yes,
                "yes_given_no": row.yes_given_no,
                "no_given_no": row.no_given_no,
            }
            for row in predict_conditionals(model)
        ],
        "census": {
            "fractions": {",".join(k): v for k, v in sorted(census.fractions.items())},
            "std_errors": {",".join(k): v for k, v in sorted(census.std_errors.items())},
            "trials": census.trials,
            "seed": census.seed,
        },
        "classification": outcome.model_class.value,
        "kolmogorov": _kolmogorov_payload(outcome.kolmogorov),
        "hilbert2d": _hilbert_payload(outcome.hilbert),
        "version": __version__,
    }
    _emit(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmachine", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"qmachine {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="exact outcome probabilities for a pure state")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--d", type=float, default=0.0)
    p.add_argument("--theta", type=float, help="angle between state and axis")
    p.add_argument("--x", type=float, help="projection of the state on the axis")
    p.add_argument("--degrees", action="store_true", help="interpret angles in degrees")
    p.set_defaults(func=_cmd_prob)

    p = sub.add_parser("simulate", help="seeded trial frequency for a pure state")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--d", type=float, default=0.0)
    p.add_argument("--theta", type=float)
    p.add_argument("--x", type=float)
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("conditional", help="conditional probability between two experiments")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True, help="angle between the two axes")
    p.add_argument("--d", type=float, default=0.0, help="offset of the target experiment")
    p.add_argument("--c", type=float, default=0.0, help="offset of the conditioning experiment")
    p.add_argument("--method", choices=("quad", "mc", "formula"), default="quad")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=_cmd_conditional)

    p = sub.add_parser("sweep", help="CSV table of the conditional over alpha")
    p.add_argument("--epsilons", type=str, required=True, help="comma-separated epsilon values")
    p.add_argument("--alpha-steps", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--mc-trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", type=str, required=True, help="output path, or - for stdout")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("check", help="exact embeddability verdicts")
    p.add_argument("kind", choices=("kolmogorov", "hilbert", "classify"))
    p.add_argument("--triad", type=str, help="triad JSON file")
    p.add_argument("--gamma2", type=str, help="adjacent transition probability, exact decimal")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("survey", help="poll pipeline: fit, predict, census, classify")
    p.add_argument("--input", type=str, required=True, help="survey JSON file")
    p.add_argument("--force-epsilon", type=float, default=None)
    p.add_argument("--census-trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.set_defaults(func=_cmd_survey)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check":
        if args.kind in ("kolmogorov", "classify") and not args.triad:
            parser.error(f"check {args.kind} requires --triad")
        if args.kind in ("hilbert", "classify") and not args.gamma2:
            parser.error(f"check {args.kind} requires --gamma2")
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return DOMAIN_ERROR
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
