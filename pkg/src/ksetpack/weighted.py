"""Weighted local search on vertex-weighted claw-free graphs.

Implements Berman's charge/nice-claw machinery (the SquareImp and
WishfulThinking loops), the greedy baseline, the rescale-and-floor variant,
and local search under misdirected power weights w^alpha.  All comparisons
are exact rationals except non-integer alpha, which uses fixed-precision
decimals with a documented margin.

Solution sets are frozensets of vertex ids.  Functions accept an optional
weight override so callers can search under modified weights (rescaled,
floored) without rebuilding the graph; overrides may contain zeros even
though graph weights themselves are strictly positive.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Sequence

from .instance import ConflictGraph, max_independent_in_neighborhood, NEIGHBORHOOD_GUARD
from .util import SearchStats, WorkBudget


@dataclass(frozen=True)
class Claw:
    """An induced star: center absent means a 1-claw (single talon)."""

    center: int | None
    talons: tuple[int, ...]


def _check_independent(graph: ConflictGraph, a: frozenset[int]) -> None:
    for u in a:
        if not (0 <= u < graph.vertex_count):
            raise ValueError(f"vertex {u} out of range")
    for u in a:
        for v in graph.neighbors[u]:
            if v > u and v in a:
                raise ValueError(f"set is not independent: edge ({u}, {v})")


def _solution_neighbors(graph: ConflictGraph, a: frozenset[int], u: int) -> list[int]:
    return [v for v in graph.neighbors[u] if v in a]


def heaviest_solution_neighbor(
    graph: ConflictGraph,
    a: frozenset[int],
    u: int,
    weights: Sequence[Fraction] | None = None,
) -> int | None:
    """n(u, A): the maximum-weight neighbor of u inside A, ties to the
    lowest id; None when u has no neighbor in A."""
    w = weights if weights is not None else graph.weights
    nbrs = _solution_neighbors(graph, a, u)
    if not nbrs:
        return None
    return min(nbrs, key=lambda v: (-w[v], v))


def charge(
    graph: ConflictGraph,
    a: frozenset[int],
    u: int,
    v: int,
    weights: Sequence[Fraction] | None = None,
) -> Fraction:
    """w(u) - w(N(u) ∩ A)/2 when v is u's heaviest solution neighbor,
    else 0.  Each outside vertex thus charges at most one member."""
    a = frozenset(a)
    _check_independent(graph, a)
    if u in a:
        raise ValueError(f"u = {u} must lie outside the solution")
    if v not in a:
        raise ValueError(f"v = {v} must lie inside the solution")
    w = weights if weights is not None else graph.weights
    if heaviest_solution_neighbor(graph, a, u, w) != v:
        return Fraction(0)
    total = sum((w[x] for x in _solution_neighbors(graph, a, u)), Fraction(0))
    return w[u] - Fraction(1, 2) * total


def _minimize_talons(
    picked: list[tuple[Fraction, int]], half: Fraction
) -> list[int]:
    """Drop talons, lightest charge first, while the rest still exceeds
    half; the survivors form a minimal set with that property."""
    total = sum((c for c, _ in picked), Fraction(0))
    kept = sorted(picked)  # ascending charge, then id
    out = []
    for c, u in kept:
        if total - c > half:
            total -= c
        else:
            out.append(u)
    return sorted(out)


def find_nice_claw(
    graph: ConflictGraph,
    a: frozenset[int],
    weights: Sequence[Fraction] | None = None,
    budget: WorkBudget | None = None,
) -> Claw | None:
    """Return a nice claw against A, or None when no good claw exists.

    1-claws first (an outside vertex with no solution neighbor, lowest id).
    Then, for each center v in A: candidates are outside neighbors charging
    v positively; greedy accumulation in decreasing charge order usually
    exceeds w(v)/2 when possible, but independence conflicts can defeat it,
    so an exhaustive pass over independent candidate subsets backs it up --
    None is then a certificate that no good claw exists at all.
    """
    a = frozenset(a)
    _check_independent(graph, a)
    w = weights if weights is not None else graph.weights
    budget = budget if budget is not None else WorkBudget()

    for u in range(graph.vertex_count):
        budget.spend()
        if u not in a and not _solution_neighbors(graph, a, u):
            return Claw(center=None, talons=(u,))

    for v in sorted(a):
        half = Fraction(1, 2) * w[v]
        cands: list[tuple[Fraction, int]] = []
        for u in graph.neighbors[v]:
            if u in a:
                continue
            if heaviest_solution_neighbor(graph, a, u, w) != v:
                continue
            c = w[u] - Fraction(1, 2) * sum(
                (w[x] for x in _solution_neighbors(graph, a, u)), Fraction(0)
            )
            if c > 0:
                cands.append((c, u))
        if not cands:
            continue
        if sum((c for c, _ in cands), Fraction(0)) <= half:
            continue
        cands.sort(key=lambda cu: (-cu[0], cu[1]))
        nbr = [frozenset(graph.neighbors[u]) for _, u in cands]

        picked: list[tuple[Fraction, int]] = []
        total = Fraction(0)
        for i, (c, u) in enumerate(cands):
            budget.spend()
            if any(u in graph.neighbors[p] for _, p in picked):
                continue
            picked.append((c, u))
            total += c
            if total > half:
                break
        if total <= half:
            picked = _exhaustive_talons(cands, nbr, half, budget)
        if picked is not None and sum((c for c, _ in picked), Fraction(0)) > half:
            talons = _minimize_talons(picked, half)
            return Claw(center=v, talons=tuple(talons))
    return None


def _exhaustive_talons(
    cands: list[tuple[Fraction, int]],
    nbr: list[frozenset[int]],
    half: Fraction,
    budget: WorkBudget,
) -> list[tuple[Fraction, int]] | None:
    """First independent subset of candidates whose charges sum past half,
    searched depth-first in the given order with a suffix-sum prune."""
    suffix = [Fraction(0)] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + cands[i][0]

    chosen: list[tuple[Fraction, int]] = []

    def dfs(i: int, total: Fraction) -> list[tuple[Fraction, int]] | None:
        if total > half:
            return list(chosen)
        if i == len(cands) or total + suffix[i] <= half:
            return None
        budget.spend()
        c, u = cands[i]
        if not any(p in nbr[i] for _, p in chosen):
            chosen.append((c, u))
            found = dfs(i + 1, total + c)
            if found is not None:
                return found
            chosen.pop()
        return dfs(i + 1, total)

    return dfs(0, Fraction(0))


def apply_claw(
    graph: ConflictGraph,
    a: frozenset[int],
    claw: Claw,
    weights: Sequence[Fraction] | None = None,
) -> frozenset[int]:
    """A ∪ talons minus the talons' solution neighbors; always independent."""
    a = frozenset(a)
    _check_independent(graph, a)
    talons = claw.talons
    if not talons:
        raise ValueError("claw has no talons")
    if claw.center is None and len(talons) != 1:
        raise ValueError("a 1-claw has exactly one talon")
    if claw.center is not None:
        if claw.center not in a:
            raise ValueError("claw center must lie in the solution")
        if any(t not in graph.neighbors[claw.center] for t in talons):
            raise ValueError("claw center must be adjacent to every talon")
    talon_set = frozenset(talons)
    if talon_set & a:
        raise ValueError("talons must lie outside the solution")
    _check_independent(graph, talon_set)
    removed = {
        x for t in talons for x in graph.neighbors[t] if x in a
    }
    result = (a - removed) | talon_set
    _check_independent(graph, result)
    return result


def _assert_claw_free(graph: ConflictGraph, claw_bound: int) -> None:
    """Error when some checkable neighborhood holds claw_bound independent
    vertices; neighborhoods above the exhaustive guard are skipped."""
    for v in range(graph.vertex_count):
        if graph.degree(v) > NEIGHBORHOOD_GUARD:
            continue
        if max_independent_in_neighborhood(graph, v) >= claw_bound:
            raise ValueError(
                f"graph is not {claw_bound}-claw-free (witness center {v})"
            )


def squared_weight(
    graph: ConflictGraph,
    a: frozenset[int],
    weights: Sequence[Fraction] | None = None,
) -> Fraction:
    w = weights if weights is not None else graph.weights
    return sum((w[v] * w[v] for v in a), Fraction(0))


def total_weight(
    graph: ConflictGraph,
    a: frozenset[int],
    weights: Sequence[Fraction] | None = None,
) -> Fraction:
    w = weights if weights is not None else graph.weights
    return sum((w[v] for v in a), Fraction(0))


def wishful_thinking(
    graph: ConflictGraph,
    claw_bound: int,
    weights: Sequence[Fraction] | None = None,
    budget: WorkBudget | None = None,
    stats: SearchStats | None = None,
    check_claw_free: bool = True,
) -> frozenset[int]:
    """Apply nice claws until none remains.  On a claw_bound-claw-free graph
    the result is within factor claw_bound/2 of the best independent set."""
    if check_claw_free:
        _assert_claw_free(graph, claw_bound)
    budget = budget if budget is not None else WorkBudget()
    a: frozenset[int] = frozenset()
    while True:
        claw = find_nice_claw(graph, a, weights, budget)
        if claw is None:
            return a
        a = apply_claw(graph, a, claw, weights)
        if stats is not None:
            stats.iterations += 1


def square_imp(
    graph: ConflictGraph,
    weights: Sequence[Fraction] | None = None,
    max_talons: int | None = None,
    budget: WorkBudget | None = None,
    stats: SearchStats | None = None,
) -> frozenset[int]:
    """Accept any claw whose talon swap strictly increases the sum of
    squared weights; stop when none exists.  Centers are scanned in
    ascending id (1-claws first), talon subsets by size then lex; each
    accepted swap strictly increases w²(A), so the loop terminates."""
    w = weights if weights is not None else graph.weights
    budget = budget if budget is not None else WorkBudget()
    a: frozenset[int] = frozenset()

    def swap_gain(talons: tuple[int, ...]) -> Fraction:
        removed = {x for t in talons for x in graph.neighbors[t] if x in a}
        return sum((w[t] * w[t] for t in talons), Fraction(0)) - sum(
            (w[x] * w[x] for x in removed), Fraction(0)
        )

    def find_swap() -> Claw | None:
        for u in range(graph.vertex_count):
            budget.spend()
            if u not in a and swap_gain((u,)) > 0:
                return Claw(center=None, talons=(u,))
        for v in sorted(a):
            cands = [u for u in graph.neighbors[v] if u not in a]
            nbr = {u: frozenset(graph.neighbors[u]) for u in cands}
            limit = max_talons if max_talons is not None else len(cands)

            chosen: list[int] = []

            def extend(start: int, size: int):
                if len(chosen) == size:
                    yield tuple(chosen)
                    return
                for i in range(start, len(cands)):
                    budget.spend()
                    u = cands[i]
                    if any(p in nbr[u] for p in chosen):
                        continue
                    chosen.append(u)
                    yield from extend(i + 1, size)
                    chosen.pop()

            for size in range(1, min(limit, len(cands)) + 1):
                for talons in extend(0, size):
                    if swap_gain(talons) > 0:
                        return Claw(center=v, talons=talons)
        return None

    while True:
        claw = find_swap()
        if claw is None:
            return a
        removed = {
            x for t in claw.talons for x in graph.neighbors[t] if x in a
        }
        a = (a - removed) | frozenset(claw.talons)
        _check_independent(graph, a)
        if stats is not None:
            stats.iterations += 1


def greedy_weighted(
    graph: ConflictGraph, weights: Sequence[Fraction] | None = None
) -> frozenset[int]:
    """Maximal independent set taking vertices by descending weight,
    ties to the lowest id."""
    w = weights if weights is not None else graph.weights
    a: set[int] = set()
    blocked: set[int] = set()
    for v in sorted(range(graph.vertex_count), key=lambda u: (-w[u], u)):
        if v in blocked:
            continue
        a.add(v)
        blocked.add(v)
        blocked.update(graph.neighbors[v])
    return frozenset(a)


def rescale_floor_weights(
    graph: ConflictGraph, base: frozenset[int], k: int
) -> tuple[list[Fraction], Fraction]:
    """Rescale all weights so the base solution weighs exactly k*n, then
    floor.  Returns (floored weights, scale).  Floors may be zero."""
    base_weight = total_weight(graph, base)
    if base_weight <= 0:
        raise ValueError("base solution must have positive weight")
    scale = Fraction(k * graph.vertex_count) / base_weight
    floored = [Fraction(int(wv * scale)) for wv in graph.weights]
    return floored, scale


def rescaled_run(
    graph: ConflictGraph,
    k: int,
    budget: WorkBudget | None = None,
    stats: SearchStats | None = None,
) -> frozenset[int]:
    """Greedy start, rescale so the greedy solution weighs k*n, floor, then
    run the nice-claw loop under the floored weights."""
    if graph.vertex_count == 0:
        return frozenset()
    budget = budget if budget is not None else WorkBudget()
    a = greedy_weighted(graph)
    floored, _ = rescale_floor_weights(graph, a, k)
    while True:
        claw = find_nice_claw(graph, a, floored, budget)
        if claw is None:
            return a
        a = apply_claw(graph, a, claw, floored)
        if stats is not None:
            stats.iterations += 1


def power_local_search(
    graph: ConflictGraph,
    alpha: Fraction,
    t: int,
    budget: WorkBudget | None = None,
    stats: SearchStats | None = None,
    start: frozenset[int] | None = None,
    precision: int = 60,
) -> frozenset[int]:
    """Local search guided by the misdirected objective sum of w(v)^alpha.

    From the greedy solution (or `start`), accept any swap of at most t
    incoming vertices that strictly increases the power objective, removing
    the incoming vertices' solution neighbors.  Integer alpha compares
    exactly; fractional alpha is evaluated with `precision` decimal digits
    and a swap must clear a relative margin of 10**(10 - precision) to
    count as an increase.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if t < 1:
        raise ValueError("t must be >= 1")
    budget = budget if budget is not None else WorkBudget()
    if start is not None:
        a = frozenset(start)
        _check_independent(graph, a)
    else:
        a = greedy_weighted(graph)

    ctx = decimal.Context(prec=precision)
    if alpha.denominator == 1:
        powers: list = [w ** alpha.numerator for w in graph.weights]
        margin = None
    else:
        with decimal.localcontext(ctx):
            alpha_d = Decimal(alpha.numerator) / Decimal(alpha.denominator)
            powers = [
                (Decimal(w.numerator) / Decimal(w.denominator)) ** alpha_d
                for w in graph.weights
            ]
            margin = Decimal(10) ** (10 - precision)

    def find_swap() -> tuple[int, ...] | None:
        outside = [u for u in range(graph.vertex_count) if u not in a]
        nbr = [frozenset(graph.neighbors[u]) for u in range(graph.vertex_count)]

        chosen: list[int] = []

        def extend(start_idx: int, size: int):
            if len(chosen) == size:
                yield tuple(chosen)
                return
            for i in range(start_idx, len(outside)):
                budget.spend()
                u = outside[i]
                if any(u in nbr[p] for p in chosen):
                    continue
                chosen.append(u)
                yield from extend(i + 1, size)
                chosen.pop()

        with decimal.localcontext(ctx):
            base = sum(powers[x] for x in a)
            threshold = margin * (abs(base) + 1) if margin is not None else 0
            for size in range(1, t + 1):
                for incoming in extend(0, size):
                    removed = {
                        x for u in incoming for x in nbr[u] if x in a
                    }
                    gain = sum(powers[u] for u in incoming) - sum(
                        powers[x] for x in removed
                    )
                    if gain > threshold:
                        return incoming
        return None

    while True:
        incoming = find_swap()
        if incoming is None:
            return a
        removed = {x for u in incoming for x in graph.neighbors[u] if x in a}
        a = (a - removed) | frozenset(incoming)
        _check_independent(graph, a)
        if stats is not None:
            stats.iterations += 1
