#!/usr/bin/env python3
"""Tabulate the predetermination regions of a three-question survey.

Draws respondent states uniformly and reports, for every combination of
per-question statuses (predetermined yes / predetermined no / formed during
questioning), the fraction of the population in it.
"""

import argparse
import math

from qmachine.survey import QuestionStats, build_survey_model, region_census


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", type=float, default=math.sqrt(2) / 2)
    parser.add_argument("--angles", type=str, default="0,60,120", help="axis angles in degrees")
    parser.add_argument("--pre", type=float, default=None, help="predetermined fraction per side (default from epsilon)")
    parser.add_argument("--trials", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    pre = args.pre if args.pre is not None else (1.0 - args.epsilon) / 2
    stats = [QuestionStats(label, 0.5, pre, pre) for label in ("q1", "q2", "q3")]
    angles = [math.radians(float(a)) for a in args.angles.split(",")]
    model = build_survey_model(stats, angles, force_epsilon=args.epsilon)
    census = region_census(model, args.trials, args.seed)

    print(f"epsilon={args.epsilon:.6f}  angles={args.angles} deg  trials={args.trials}  seed={args.seed}")
    print(f"{'q1':>6} {'q2':>6} {'q3':>6} {'fraction':>10} {'stderr':>10}")
    for key in sorted(census.fractions, key=lambda k: -census.fractions[k]):
        frac = census.fractions[key]
        print(f"{key[0]:>6} {key[1]:>6} {key[2]:>6} {frac:>10.5f} {census.std_errors[key]:>10.5f}")
    print(f"{len(census.fractions)} nonempty regions; total {sum(census.fractions.values()):.6f}")


if __name__ == "__main__":
    main()
