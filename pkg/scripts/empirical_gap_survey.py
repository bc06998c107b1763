#!/usr/bin/env python3
"""Survey the clique-constrained LP against small local optima.

For each sampled instance this prints the intersecting-family LP value, the
size of a 2-locally-optimal packing, and their ratio.  The ratio is reported
as data: nothing here asserts a bound on it, and the survey exists precisely
because no proven bound is available to assert.

Usage:
    python3 scripts/empirical_gap_survey.py --k 3 --universe 15 --n 18 --count 10
"""
import argparse
import sys
from fractions import Fraction

from ksetpack import gap_report, gen_random, t_local_search


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=int, default=3, help="set size (default 3)")
    parser.add_argument("--universe", type=int, default=15, help="universe size")
    parser.add_argument("--n", type=int, default=18, help="sets per instance")
    parser.add_argument("--count", type=int, default=10, help="instances to sample")
    parser.add_argument("--seed", type=int, default=0, help="first seed; instance i uses seed+i")
    parser.add_argument("--t", type=int, default=2, help="local search depth (default 2)")
    args = parser.parse_args(argv)

    print(f"# intersecting-family LP vs {args.t}-local packing, "
          f"k={args.k} universe={args.universe} n={args.n}")
    print(f"{'seed':>6} {'lp':>8} {'local':>6} {'ratio':>8} {'~float':>8}")
    worst = Fraction(0)
    total = Fraction(0)
    for i in range(args.count):
        seed = args.seed + i
        instance = gen_random(args.universe, args.n, args.k, seed)
        lp_value = gap_report(instance, "intersecting").lp_value
        local = len(t_local_search(instance, args.t).members)
        ratio = lp_value / local
        worst = max(worst, ratio)
        total += ratio
        print(f"{seed:>6} {str(lp_value):>8} {local:>6} {str(ratio):>8} {float(ratio):>8.3f}")
    mean = total / args.count
    print(f"# worst ratio {worst} (~{float(worst):.3f}), "
          f"mean {mean} (~{float(mean):.3f}); no bound asserted")
    return 0


if __name__ == "__main__":
    sys.exit(main())
