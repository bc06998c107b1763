"""Unweighted local search: t-improving sets, the ratio-bound calculator,
and the auxiliary-multigraph search for improvements of logarithmic size.

The auxiliary-multigraph route comes with a caveat: a dense subgraph of the
auxiliary graph does NOT necessarily yield a usable improvement, because the
outside sets behind its edges may intersect each other.  Every candidate is
therefore validated before being returned, and callers must expect none.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .instance import (
    Instance,
    Packing,
    conflict_graph,
    is_packing,
)
from .multigraph import Multigraph, induced_edge_count, find_dense_subgraph
from .util import SearchStats, WorkBudget


@dataclass(frozen=True)
class ImprovingSet:
    """A swap: add `incoming` (pairwise disjoint, outside the packing),
    remove `outgoing` (exactly the members they intersect)."""

    incoming: tuple[int, ...]
    outgoing: tuple[int, ...]


def _disjoint_subsets(candidates, adjacent, size, budget):
    """Yield all pairwise-nonadjacent subsets of `candidates` of exactly
    `size`, in lexicographic order, pruning conflicts as early as possible."""

    chosen: list[int] = []

    def extend(start: int):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for idx in range(start, len(candidates)):
            budget.spend()
            c = candidates[idx]
            if any(adjacent(c, p) for p in chosen):
                continue
            chosen.append(c)
            yield from extend(idx + 1)
            chosen.pop()

    yield from extend(0)


def find_improving_set(
    instance: Instance,
    packing: Packing,
    t: int,
    budget: WorkBudget | None = None,
) -> ImprovingSet | None:
    """First improving set with at most t incoming sets, by size then lex
    order, or None (which certifies t-local optimality)."""
    if t < 1:
        raise ValueError("t must be >= 1")
    if not is_packing(instance, packing):
        raise ValueError("packing is not pairwise disjoint")
    budget = budget if budget is not None else WorkBudget()
    graph = conflict_graph(instance)
    members = set(packing.members)
    outside = [i for i in range(instance.n) if i not in members]
    neighbor_sets = [frozenset(graph.neighbors[i]) for i in range(instance.n)]

    def adjacent(a: int, b: int) -> bool:
        return b in neighbor_sets[a]

    for size in range(1, t + 1):
        for combo in _disjoint_subsets(outside, adjacent, size, budget):
            outgoing = set()
            for i in combo:
                outgoing |= neighbor_sets[i] & members
            if size > len(outgoing):
                return ImprovingSet(
                    incoming=tuple(combo), outgoing=tuple(sorted(outgoing))
                )
    return None


def apply_improving_set(
    instance: Instance, packing: Packing, imp: ImprovingSet
) -> Packing:
    """Apply the swap, re-deriving and checking everything against the
    packing so a stale or corrupted ImprovingSet cannot slip through."""
    members = set(packing.members)
    incoming = list(imp.incoming)
    if not incoming:
        raise ValueError("improving set has no incoming sets")
    if any(i in members for i in incoming):
        raise ValueError("stale improving set: incoming overlaps the packing")
    occupied: set[int] = set()
    for i in incoming:
        if not (0 <= i < instance.n):
            raise ValueError(f"incoming index {i} out of range")
        for e in instance.sets[i]:
            if e in occupied:
                raise ValueError("incoming sets are not pairwise disjoint")
            occupied.add(e)
    outgoing = {
        m
        for m in members
        if any(e in occupied for e in instance.sets[m])
    }
    if outgoing != set(imp.outgoing):
        raise ValueError("stale improving set: outgoing does not match packing")
    if len(incoming) <= len(outgoing):
        raise ValueError("set is not improving")
    result = Packing(members=tuple(sorted((members - outgoing) | set(incoming))))
    if not is_packing(instance, result):
        raise RuntimeError("internal: applied swap broke disjointness")
    return result


def t_local_search(
    instance: Instance,
    t: int,
    budget: WorkBudget | None = None,
    stats: SearchStats | None = None,
    start: Packing | None = None,
) -> Packing:
    """Run find/apply to a t-locally optimal packing (from empty, or from
    `start`).  Terminates: cardinality strictly increases each round."""
    budget = budget if budget is not None else WorkBudget()
    packing = start if start is not None else Packing(members=())
    while True:
        imp = find_improving_set(instance, packing, t, budget)
        if imp is None:
            return packing
        packing = apply_improving_set(instance, packing, imp)
        if stats is not None:
            stats.iterations += 1


def hs_bound(k: int, t: int) -> Fraction:
    """Worst-case ratio (optimum over t-locally-optimal) for k-set packing,
    the Hurkens-Schrijver bound.  Decreases from (k+1)/2 at t=2 toward k/2."""
    if k < 3 or t < 2:
        raise ValueError("need k >= 3 and t >= 2")
    r = (t + 1) // 2
    p = (k - 1) ** r
    if t % 2 == 1:
        return Fraction(k * p - k, 2 * p - k)
    return Fraction(k * p - 2, 2 * p - 2)


def build_auxiliary_multigraph(
    instance: Instance, packing: Packing, include_loops: bool
) -> tuple[Multigraph, tuple[int, ...]]:
    """One vertex per packing member; each outside set meeting exactly two
    members becomes an edge between them (exactly one member: a loop, if
    include_loops).  Returns the multigraph and, per edge, the outside set
    index that produced it."""
    if not is_packing(instance, packing):
        raise ValueError("packing is not pairwise disjoint")
    members = list(packing.members)
    member_pos = {m: i for i, m in enumerate(members)}
    member_elements = [frozenset(instance.sets[m]) for m in members]
    edges: list[tuple[int, int]] = []
    labels: list[int] = []
    for f in range(instance.n):
        if f in member_pos:
            continue
        elems = frozenset(instance.sets[f])
        hits = [i for i, me in enumerate(member_elements) if me & elems]
        if len(hits) == 2:
            edges.append((hits[0], hits[1]))
            labels.append(f)
        elif len(hits) == 1 and include_loops:
            edges.append((hits[0], hits[0]))
            labels.append(f)
    return (
        Multigraph(vertex_count=len(members), edges=tuple(edges)),
        tuple(labels),
    )


def log_improvement_search(
    instance: Instance,
    packing: Packing,
    epsilon: Fraction,
    budget: WorkBudget | None = None,
) -> ImprovingSet | None:
    """Search for an improving set through dense subgraphs of the auxiliary
    multigraph, within the size bound 4*(1 + 1/eps)*log2(|packing|).

    Tries the constructive dense-subgraph procedure when the density
    precondition holds, then exhaustive subsets up to the bound.  Every
    candidate is validated (incoming pairwise disjoint, strictly improving);
    invalid candidates are skipped, and None means no validated improvement
    was found -- not that none exists of larger size.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    budget = budget if budget is not None else WorkBudget()
    aux, labels = build_auxiliary_multigraph(instance, packing, include_loops=False)
    n_aux = aux.vertex_count
    if n_aux < 2:
        return None
    size_cap = min(n_aux, math.floor(4 * (1 + 1 / eps) * math.log2(n_aux) + 1e-9))
    if size_cap < 1:
        return None

    def candidate_from(x: frozenset[int] | set[int]) -> ImprovingSet | None:
        eids = [
            i for i, (a, b) in enumerate(aux.edges) if a in x and b in x
        ]
        incoming = sorted(labels[i] for i in eids)
        occupied: set[int] = set()
        for f in incoming:
            elems = instance.sets[f]
            if any(e in occupied for e in elems):
                return None  # the dense subgraph lied: sets intersect
            occupied.update(elems)
        outgoing = sorted(
            m
            for m in packing.members
            if any(e in occupied for e in instance.sets[m])
        )
        if len(incoming) <= len(outgoing):
            return None
        return ImprovingSet(incoming=tuple(incoming), outgoing=tuple(outgoing))

    h = math.ceil(1 / eps)
    if h * len(aux.edges) >= (h + 1) * n_aux:
        dense = find_dense_subgraph(aux, h)
        if len(dense) <= size_cap:
            found = candidate_from(dense)
            if found is not None:
                return found
    for size in range(1, size_cap + 1):
        for subset in combinations(range(n_aux), size):
            budget.spend()
            x = set(subset)
            if induced_edge_count(aux, x) > size:
                found = candidate_from(x)
                if found is not None:
                    return found
    return None


def log_local_search(
    instance: Instance,
    epsilon: Fraction,
    budget: WorkBudget | None = None,
    stats: SearchStats | None = None,
) -> Packing:
    """Interleave plain 2-swaps with the logarithmic-size multigraph search:
    keep the packing 2-locally optimal, then hunt for one larger improving
    set; stop when both come up empty.  Terminates because every applied
    swap strictly grows the packing."""
    budget = budget if budget is not None else WorkBudget()
    packing = t_local_search(instance, 2, budget, stats)
    while True:
        imp = log_improvement_search(instance, packing, epsilon, budget)
        if imp is None:
            return packing
        packing = apply_improving_set(instance, packing, imp)
        if stats is not None:
            stats.iterations += 1
        packing = t_local_search(instance, 2, budget, stats, start=packing)
