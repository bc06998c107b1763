#!/usr/bin/env python3
"""Measure exact/heuristic ratios against their worst-case guarantees.

Samples random instances, runs the chosen algorithms, and prints one row per
(instance, algorithm) with the observed ratio next to the proven ceiling:
hs_bound(k, t) for t-local search, k for weighted greedy, (k+1)/2 for the
nice-claw search.  Exact values come from the branch-and-bound oracle, so
keep n at desk scale.  local:t rows are measured on the cardinality
objective (weights ignored there); greedy and wishful rows on weight.

Usage:
    python3 scripts/ratio_experiments.py --k 3 --count 20 --weights 1:5
    python3 scripts/ratio_experiments.py --k 4 --algorithms local:2 local:3 --csv
"""
import argparse
import dataclasses
import sys
from fractions import Fraction

from ksetpack import (
    conflict_graph,
    gen_random,
    greedy_weighted,
    hs_bound,
    max_packing_value,
    packing_value,
    t_local_search,
    total_weight,
    wishful_thinking,
)
from ksetpack.util import parse_fraction

DEFAULT_ALGORITHMS = ("local:2", "local:3", "greedy", "wishful")


def bound_for(token: str, k: int) -> Fraction:
    if token.startswith("local:"):
        return hs_bound(k, int(token.split(":", 1)[1]))
    if token == "greedy":
        return Fraction(k)
    if token == "wishful":
        return Fraction(k + 1, 2)
    raise ValueError(f"unknown algorithm {token!r}")


def run_one(instance, token: str) -> tuple[Fraction, Fraction]:
    """Return (exact, value) under the objective the bound speaks about:
    cardinality for local:t, weight for greedy and wishful."""
    if token.startswith("local:"):
        t = int(token.split(":", 1)[1])
        stripped = dataclasses.replace(instance, weights=None)
        exact = max_packing_value(stripped)
        return exact, packing_value(stripped, t_local_search(stripped, t))
    exact = max_packing_value(instance)
    graph = conflict_graph(instance)
    if token == "greedy":
        return exact, total_weight(graph, greedy_weighted(graph))
    if token == "wishful":
        return exact, total_weight(graph, wishful_thinking(graph, instance.k + 1))
    raise ValueError(f"unknown algorithm {token!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--universe", type=int, default=15)
    parser.add_argument("--n", type=int, default=18)
    parser.add_argument("--count", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--weights", default=None, metavar="LO:HI",
                        help="draw weights from [LO, HI]; omit for unit weights")
    parser.add_argument("--algorithms", nargs="+", default=list(DEFAULT_ALGORITHMS))
    parser.add_argument("--csv", action="store_true", help="machine-readable output")
    args = parser.parse_args(argv)

    weight_range = None
    if args.weights is not None:
        lo, _, hi = args.weights.partition(":")
        weight_range = (parse_fraction(lo), parse_fraction(hi))

    for token in args.algorithms:
        bound_for(token, args.k)  # fail fast on typos

    if args.csv:
        print("seed,algorithm,exact,value,ratio,bound,slack")
    else:
        print(f"# k={args.k} universe={args.universe} n={args.n} "
              f"weights={args.weights or 'unit'}")
        print(f"{'seed':>6} {'algorithm':>10} {'exact':>8} {'value':>8} "
              f"{'ratio':>8} {'bound':>6}")

    worst: dict[str, Fraction] = {token: Fraction(0) for token in args.algorithms}
    for i in range(args.count):
        seed = args.seed + i
        instance = gen_random(args.universe, args.n, args.k, seed, weight_range)
        for token in args.algorithms:
            exact, value = run_one(instance, token)
            ratio = exact / value
            bound = bound_for(token, args.k)
            worst[token] = max(worst[token], ratio)
            if args.csv:
                print(f"{seed},{token},{exact},{value},{ratio},{bound},{bound - ratio}")
            else:
                print(f"{seed:>6} {token:>10} {str(exact):>8} {str(value):>8} "
                      f"{str(ratio):>8} {str(bound):>6}")

    if not args.csv:
        for token in args.algorithms:
            print(f"# {token}: worst observed {worst[token]} "
                  f"(~{float(worst[token]):.3f}) vs bound {bound_for(token, args.k)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
