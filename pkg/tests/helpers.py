"""Brute-force oracles and random generators shared by the test modules.

Everything here is deliberately naive: exhaustive enumeration at sizes where
that is still instant.  The point is independence from the code under test.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ksetpack import ConflictGraph, Instance, Multigraph, Packing, is_packing


def brute_max_weight_independent(
    graph: ConflictGraph, weights=None
) -> tuple[Fraction, tuple[int, ...]]:
    """Best weight and lexicographically smallest argmax, by trying all 2^n subsets."""
    n = graph.vertex_count
    assert n <= 16, "oracle is exponential"
    w = weights if weights is not None else graph.weights
    masks = [0] * n
    for v in range(n):
        for u in graph.neighbors[v]:
            masks[v] |= 1 << u
    best_val = Fraction(0)
    best_members: tuple[int, ...] = ()
    for mask in range(1 << n):
        ok = True
        val = Fraction(0)
        for v in range(n):
            if mask >> v & 1:
                if masks[v] & mask:
                    ok = False
                    break
                val += w[v]
        if not ok:
            continue
        members = tuple(v for v in range(n) if mask >> v & 1)
        if val > best_val or (val == best_val and members < best_members):
            best_val = val
            best_members = members
    return best_val, best_members


def brute_maximal_cliques(graph: ConflictGraph) -> list[tuple[int, ...]]:
    """All maximal cliques by subset enumeration. Keep n small."""
    n = graph.vertex_count
    assert n <= 12
    adj = [set(graph.neighbors[v]) for v in range(n)]

    def is_clique(vs):
        return all(u in adj[v] for u, v in itertools.combinations(vs, 2))

    cliques = []
    for r in range(1, n + 1):
        for vs in itertools.combinations(range(n), r):
            if not is_clique(vs):
                continue
            if any(all(u in adj[w] for u in vs) for w in range(n) if w not in vs):
                continue
            cliques.append(vs)
    return sorted(cliques)


def brute_find_improving(instance: Instance, packing: Packing, t: int):
    """First (by size, then lex) collection of <= t disjoint outside sets that
    beats the packing members it overlaps.  Mirrors the search contract."""
    inside = set(packing.members)
    member_of = {}
    for i in packing.members:
        for e in instance.sets[i]:
            member_of[e] = i
    outside = [i for i in range(instance.n) if i not in inside]
    for size in range(1, t + 1):
        for combo in itertools.combinations(outside, size):
            seen: set[int] = set()
            disjoint = True
            for i in combo:
                s = set(instance.sets[i])
                if seen & s:
                    disjoint = False
                    break
                seen |= s
            if not disjoint:
                continue
            outgoing = sorted({member_of[e] for i in combo for e in instance.sets[i] if e in member_of})
            if size > len(outgoing):
                return combo, tuple(outgoing)
    return None


def random_state(graph: ConflictGraph, rng: random.Random) -> frozenset[int]:
    """Random independent set: greedy over a shuffled order, then random drops."""
    order = list(range(graph.vertex_count))
    rng.shuffle(order)
    chosen: set[int] = set()
    for v in order:
        if not any(u in chosen for u in graph.neighbors[v]):
            chosen.add(v)
    return frozenset(v for v in chosen if rng.random() > 0.3)


def random_min_deg3_multigraph(n: int, rng: random.Random) -> Multigraph:
    """Pairing model: three stubs per vertex, one spare stub if the total is odd."""
    stubs = [v for v in range(n) for _ in range(3)]
    if len(stubs) % 2:
        stubs.append(rng.randrange(n))
    rng.shuffle(stubs)
    edges = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
    return Multigraph(n, tuple(edges))


def random_dense_multigraph(n: int, h: int, rng: random.Random, slack: int = 0) -> Multigraph:
    """Random multigraph with h*|E| >= (h+1)*|V|, i.e. dense enough for the
    bounded-size dense-subgraph search to be guaranteed an answer."""
    need = ((h + 1) * n + h - 1) // h + slack
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(need)]
    return Multigraph(n, tuple(edges))


def make_fig_graph() -> tuple[ConflictGraph, frozenset[int], frozenset[int]]:
    """Two heavy hubs versus five unit-ish spokes.

    Vertices 0..4 weigh 10, vertices 5 and 6 weigh 18.  Vertex 5 conflicts
    with 0,1,2 and vertex 6 with 0,3,4, so {0..4} and {5,6} are the two
    maximal solutions of interest.
    """
    weights = [Fraction(10)] * 5 + [Fraction(18)] * 2
    edges = [(5, 1), (5, 2), (5, 0), (6, 0), (6, 3), (6, 4)]
    graph = ConflictGraph.from_edges(7, edges, weights)
    return graph, frozenset(range(5)), frozenset({5, 6})


def random_weighted_instance(rng: random.Random, universe: int, n: int, k: int) -> Instance:
    from ksetpack import gen_random

    return gen_random(universe, n, k, seed=rng.randrange(10**6), weight_range=(Fraction(1), Fraction(5)))


def assert_valid_packing(instance: Instance, members) -> None:
    assert is_packing(instance, Packing(tuple(sorted(members))))


def solve_square_fraction(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Solve A x = b exactly; None if A is singular."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def brute_lp_optimum(lp) -> tuple[str, Fraction | None]:
    """Exact optimum by vertex enumeration. Every variable must have a finite
    upper bound so the feasible region is a polytope."""
    n = lp.num_vars
    rows: list[tuple[list[Fraction], str, Fraction]] = []
    for c in lp.constraints:
        dense = [Fraction(0)] * n
        for var, coef in c.coeffs:
            dense[var] = coef
        rows.append((dense, c.relation, c.rhs))
    for j in range(n):
        assert lp.upper[j] is not None, "oracle needs a bounded box"
        unit = [Fraction(0)] * n
        unit[j] = Fraction(1)
        rows.append((unit, ">=", lp.lower[j]))
        rows.append((unit, "<=", lp.upper[j]))

    def feasible(x):
        for dense, rel, rhs in rows:
            lhs = sum(d * xi for d, xi in zip(dense, x))
            if rel == "<=" and lhs > rhs:
                return False
            if rel == ">=" and lhs < rhs:
                return False
            if rel == "=" and lhs != rhs:
                return False
        return True

    best = None
    for combo in itertools.combinations(range(len(rows)), n):
        x = solve_square_fraction([rows[i][0] for i in combo], [rows[i][2] for i in combo])
        if x is None or not feasible(x):
            continue
        val = sum(c * xi for c, xi in zip(lp.objective, x))
        if best is None or val > best:
            best = val
    if best is None:
        return "infeasible", None
    return "optimal", best
