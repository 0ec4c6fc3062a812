#!/usr/bin/env python3
"""Verify every dimension/entropy identity on a space (and optional measure).

Prints one line per identity — estimate, closed-form target, relative error,
verdict — and exits 0 only if all of them hold at their tolerances.

Examples:
    python scripts/verify_all.py
    python scripts/verify_all.py --space sft:golden.txt --measure markov.json
    python scripts/verify_all.py --space full:3 --a 1.5 --b 1.2
"""
import argparse
import sys

from shiftmetrics import (
    BernoulliMeasure,
    MetricParams,
    entropy_oracle,
    standard_bundle,
    top_entropy_oracle,
    verify_identities,
)
from shiftmetrics.cli import load_measure, parse_space


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--space", default="full:2", help="full:M or sft:PATH")
    parser.add_argument("--a", type=float, default=1.3, help="backward expansion base")
    parser.add_argument("--b", type=float, default=1.3, help="forward expansion base")
    parser.add_argument("--measure", help="measure JSON; defaults to uniform on full:M")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-points", type=int, default=100)
    args = parser.parse_args(argv)

    space = parse_space(args.space)
    params = MetricParams(args.a, args.b)
    if args.measure:
        mu = load_measure(args.measure)
    elif args.space.startswith("full:"):
        mu = BernoulliMeasure([1.0 / space.alphabet_size] * space.alphabet_size)
    else:
        mu = None

    h_top = top_entropy_oracle(space)
    h_mu = entropy_oracle(mu).entropy if mu is not None else None
    bundle = standard_bundle(
        space, params, mu, seed=args.seed, n_points=args.n_points
    )
    reports = verify_identities(bundle, h_top, h_mu)

    width = max(len(rep.name) for rep in reports)
    print(f"space {args.space}  a={args.a} b={args.b}  k={params.k():.6f}  "
          f"h_top={h_top:.6f}" + (f"  h_mu={h_mu:.6f}" if h_mu is not None else ""))
    for rep in reports:
        print(
            f"{rep.name:<{width}}  lhs={rep.lhs:>10.6f}  rhs={rep.rhs:>10.6f}  "
            f"rel={rep.rel_error:.2e}  tol={rep.tolerance:.0e}  "
            f"{'pass' if rep.passed else 'FAIL'}"
        )
    failed = [rep.name for rep in reports if not rep.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} identities hold")
    return 0 if not failed else 1


if __name__ == "__main__":
    sys.exit(main())
