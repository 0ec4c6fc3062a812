#!/usr/bin/env python3
"""Track how regression slopes converge to their closed-form targets.

For a chosen quantity, re-runs the estimator over deeper and deeper
radius/depth ladders and prints slope, target, relative error, and residual
RMS per row — a quick way to see the convergence rate and to pick ladder
depths for new experiments.

Examples:
    python scripts/convergence_study.py --quantity box
    python scripts/convergence_study.py --quantity neutralized --r 0.2
    python scripts/convergence_study.py --quantity alpha --space sft:golden.txt
"""
import argparse
import math
import sys

from shiftmetrics import (
    MetricParams,
    RadiusLadder,
    alpha_estimation_entropy,
    box_dimension,
    neutralized_topological,
    topological_entropy_spanning,
    top_entropy_oracle,
)
from shiftmetrics.cli import parse_space


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--space", default="full:2", help="full:M or sft:PATH")
    parser.add_argument("--a", type=float, default=1.3)
    parser.add_argument("--b", type=float, default=1.3)
    parser.add_argument(
        "--quantity",
        default="box",
        choices=("box", "entropy", "neutralized", "alpha"),
    )
    parser.add_argument("--r", type=float, default=0.05, help="shrinking rate")
    parser.add_argument("--alpha", type=float, default=0.1, help="discount rate")
    args = parser.parse_args(argv)

    space = parse_space(args.space)
    params = MetricParams(args.a, args.b)
    h = top_entropy_oracle(space)
    k = params.k()

    if args.quantity == "box":
        target = k * h
        runs = [
            (f"2^-8 .. 2^-{top}", box_dimension(space, params, RadiusLadder.geometric(8, top)))
            for top in range(12, 41, 4)
        ]
    elif args.quantity == "entropy":
        target = h
        runs = [
            (f"depths 10..{top}", topological_entropy_spanning(space, params, 0.9, range(10, top + 1, 5)))
            for top in range(25, 101, 15)
        ]
    elif args.quantity == "neutralized":
        target = (1.0 + args.r * k) * h
        runs = [
            (f"depths 20..{top}", neutralized_topological(space, params, args.r, range(20, top + 1, 10)))
            for top in range(50, 151, 20)
        ]
    else:
        target = k * h / params.k_alpha(args.alpha)
        runs = [
            (f"depths 20..{top}", alpha_estimation_entropy(space, params, args.alpha, range(20, top + 1, 10)))
            for top in range(50, 151, 20)
        ]

    print(f"{args.quantity} on {args.space}: target {target:.6f}")
    for label, est in runs:
        rel = abs(est.slope - target) / abs(target)
        flag = "  [flagged]" if est.flagged else ""
        print(
            f"{label:<16} slope={est.slope:.6f}  rel={rel:.2e}  "
            f"rms={est.residual_rms:.2e}{flag}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
