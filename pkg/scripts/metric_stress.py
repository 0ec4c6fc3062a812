#!/usr/bin/env python3
"""Stress the metric verifiers on randomized samples.

Part 1 sweeps the slack parameter gamma and reports, for each value, the
stabilization index n0, the empirical expansion floor eps', and the
violation counts over a batch of random point pairs.

Part 2 draws finite symbolic samples, runs the chain metrization, and
reports the worst two-sided sandwich margins (D <= rho and rho <= 4 D) plus
how much the chain construction actually shortened distances.

Examples:
    python scripts/metric_stress.py
    python scripts/metric_stress.py --space sft:golden.txt --pairs 5000
    python scripts/metric_stress.py --gammas 0.02 0.05 0.1 --samples 20
"""
import argparse
import sys

import numpy as np

from shiftmetrics import (
    FiniteSample,
    MetricParams,
    check_quasi_metric,
    frink_metrize,
    mather_n0,
    sample_point,
    verify_hyperbolicity,
)
from shiftmetrics.cli import parse_space


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--space", default="full:2", help="full:M or sft:PATH")
    parser.add_argument("--a", type=float, default=1.3)
    parser.add_argument("--b", type=float, default=1.3)
    parser.add_argument("--gammas", type=float, nargs="+", default=[0.02, 0.05, 0.1])
    parser.add_argument("--pairs", type=int, default=2000)
    parser.add_argument("--samples", type=int, default=10)
    parser.add_argument("--sample-size", type=int, default=120)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    space = parse_space(args.space)
    params = MetricParams(args.a, args.b)

    print(f"hyperbolicity sweep on {args.space}, {args.pairs} pairs per gamma")
    for gamma in args.gammas:
        mp = mather_n0(params, gamma)
        horizon = 4 * mp.n0 + 48
        pairs = [
            (
                sample_point(space, horizon, args.seed + 2 * i),
                sample_point(space, horizon, args.seed + 2 * i + 1),
            )
            for i in range(args.pairs)
        ]
        rep = verify_hyperbolicity(pairs, mp, params)
        print(
            f"  gamma={gamma:<5} n0={mp.n0:<4} eps'={rep.eps_prime:.4f}  "
            f"lipschitz={rep.lipschitz_forward_violations}+{rep.lipschitz_backward_violations}  "
            f"sandwich={rep.sandwich_violations}  expansion={rep.expansion_failures}  "
            f"{'pass' if rep.passed else 'FAIL'}"
        )

    print(f"chain metrization on {args.samples} samples of {args.sample_size} points")
    worst_direct = worst_sandwich = 0.0
    worst_ratio = 1.0
    triples = 0
    for i in range(args.samples):
        points = [
            sample_point(space, 60, args.seed + i * args.sample_size + j)
            for j in range(args.sample_size)
        ]
        sample = FiniteSample.from_points(points, params)
        triples += len(check_quasi_metric(sample, 2.0))
        D = frink_metrize(sample)
        R = sample.matrix
        worst_direct = max(worst_direct, float(np.max(D - R)))
        worst_sandwich = max(worst_sandwich, float(np.max(R - 4.0 * D)))
        off = ~np.eye(len(points), dtype=bool)
        worst_ratio = max(worst_ratio, float(np.max(R[off] / D[off])))
    print(f"  2-quasi-metric violating triples: {triples}")
    print(f"  worst D - rho:   {worst_direct:.3e}  (must be <= 0)")
    print(f"  worst rho - 4D:  {worst_sandwich:.3e}  (must be <= 0)")
    print(f"  largest rho/D ratio: {worst_ratio:.4f}  (4 is the proven cap)")
    ok = worst_direct <= 1e-12 and worst_sandwich <= 1e-12 and triples == 0
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
