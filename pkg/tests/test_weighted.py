import itertools
import random
from fractions import Fraction

import pytest
from helpers import random_state

from ksetpack import (
    CapExceededError,
    Claw,
    ConflictGraph,
    SearchStats,
    WorkBudget,
    apply_claw,
    charge,
    conflict_graph,
    find_nice_claw,
    gen_random,
    greedy_weighted,
    heaviest_solution_neighbor,
    max_packing_value,
    power_local_search,
    rescaled_run,
    square_imp,
    squared_weight,
    total_weight,
    wishful_thinking,
)
from ksetpack.weighted import rescale_floor_weights

F = Fraction


def random_weighted_graph(rng, n, p):
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p
    ]
    weights = [F(rng.randrange(1, 12), rng.randrange(1, 4)) for _ in range(n)]
    return ConflictGraph.from_edges(n, edges, weights)


class TestHeaviestSolutionNeighbor:
    def test_picks_heaviest(self):
        g = ConflictGraph.from_edges(3, [(0, 1), (0, 2)], [F(1), F(2), F(5)])
        assert heaviest_solution_neighbor(g, frozenset({1, 2}), 0) == 2

    def test_ties_go_to_lowest_id(self, fig_graph):
        g, s, _ = fig_graph
        assert heaviest_solution_neighbor(g, s, 5) == 0
        assert heaviest_solution_neighbor(g, s, 6) == 0

    def test_none_without_neighbors(self):
        g = ConflictGraph.from_edges(2, [])
        assert heaviest_solution_neighbor(g, frozenset({1}), 0) is None

    def test_weight_override(self):
        g = ConflictGraph.from_edges(3, [(0, 1), (0, 2)], [F(1), F(2), F(5)])
        assert heaviest_solution_neighbor(g, frozenset({1, 2}), 0, [F(1), F(9), F(5)]) == 1


class TestCharge:
    def test_worked_example(self, fig_graph):
        g, s, _ = fig_graph
        assert charge(g, s, 5, 0) == 3
        assert charge(g, s, 6, 0) == 3
        # vertex 1 is a solution neighbor of 5 but not its chargee
        assert charge(g, s, 5, 1) == 0
        assert charge(g, s, 6, 3) == 0

    def test_charge_can_be_negative(self):
        g = ConflictGraph.from_edges(2, [(0, 1)], [F(10), F(4)])
        assert charge(g, frozenset({0}), 1, 0) == F(4) - F(5)

    def test_validation(self, fig_graph):
        g, s, _ = fig_graph
        with pytest.raises(ValueError):
            charge(g, s, 0, 1)  # u inside the solution
        with pytest.raises(ValueError):
            charge(g, s, 5, 6)  # v outside the solution
        with pytest.raises(ValueError):
            charge(g, frozenset({5, 1}), 6, 1)  # not independent

    def test_concentrates_on_heaviest_neighbor(self):
        rng = random.Random(41)
        for trial in range(30):
            g = random_weighted_graph(rng, rng.randrange(3, 10), 0.4)
            a = random_state(g, rng)
            for u in range(g.vertex_count):
                if u in a:
                    continue
                target = heaviest_solution_neighbor(g, a, u)
                charges = {v: charge(g, a, u, v) for v in a}
                for v, c in charges.items():
                    if v != target:
                        assert c == 0
                if target is not None:
                    nbr_weight = sum(
                        (g.weights[x] for x in g.neighbors[u] if x in a), F(0)
                    )
                    assert charges[target] == g.weights[u] - nbr_weight / 2

    def test_squared_weights_bounded_by_heaviest(self):
        # sum of w(v)^2 over u's solution neighbors never exceeds
        # w(n(u, A)) times their plain weight sum
        rng = random.Random(42)
        checked = 0
        for trial in range(100):
            g = random_weighted_graph(rng, rng.randrange(3, 11), 0.5)
            a = random_state(g, rng)
            u = rng.randrange(g.vertex_count)
            if u in a:
                continue
            nbrs = [x for x in g.neighbors[u] if x in a]
            if not nbrs:
                continue
            top = g.weights[heaviest_solution_neighbor(g, a, u)]
            assert sum(g.weights[x] ** 2 for x in nbrs) <= top * sum(
                g.weights[x] for x in nbrs
            )
            checked += 1
        assert checked > 30


def brute_good_claw_exists(g, a):
    """Reference check: some center v in A has an independent set of
    positively-charging outside neighbors beating w(v)/2, or a 1-claw."""
    for u in range(g.vertex_count):
        if u not in a and not any(x in a for x in g.neighbors[u]):
            return True
    for v in sorted(a):
        cands = [
            u
            for u in g.neighbors[v]
            if u not in a and charge(g, a, u, v) > 0
        ]
        for r in range(1, len(cands) + 1):
            for combo in itertools.combinations(cands, r):
                if any(
                    y in g.neighbors[x] for x, y in itertools.combinations(combo, 2)
                ):
                    continue
                if sum(charge(g, a, u, v) for u in combo) > g.weights[v] / 2:
                    return True
    return False


class TestFindNiceClaw:
    def test_worked_example(self, fig_graph):
        g, s, _ = fig_graph
        assert find_nice_claw(g, s) == Claw(center=0, talons=(5, 6))

    def test_prefers_one_claws(self):
        g = ConflictGraph.from_edges(3, [(0, 1)], [F(1), F(3), F(2)])
        assert find_nice_claw(g, frozenset({0})) == Claw(center=None, talons=(2,))

    def test_none_is_complete(self):
        rng = random.Random(43)
        nones = claws = 0
        for trial in range(150):
            g = random_weighted_graph(rng, rng.randrange(3, 9), 0.5)
            a = random_state(g, rng)
            got = find_nice_claw(g, a)
            if got is None:
                assert not brute_good_claw_exists(g, a)
                nones += 1
            else:
                claws += 1
        assert nones > 10 and claws > 10

    def test_claws_are_good_and_minimal(self):
        rng = random.Random(44)
        seen = 0
        for trial in range(200):
            g = random_weighted_graph(rng, rng.randrange(3, 10), 0.4)
            a = random_state(g, rng)
            got = find_nice_claw(g, a)
            if got is None or got.center is None:
                continue
            seen += 1
            v = got.center
            half = g.weights[v] / 2
            charges = [charge(g, a, u, v) for u in got.talons]
            assert all(c > 0 for c in charges)
            assert all(v in g.neighbors[u] for u in got.talons)
            assert not any(
                y in g.neighbors[x]
                for x, y in itertools.combinations(got.talons, 2)
            )
            total = sum(charges)
            assert total > half
            for c in charges:
                assert total - c <= half  # dropping any talon breaks goodness
        assert seen > 40

    def test_applying_increases_squared_weight(self):
        rng = random.Random(45)
        seen = 0
        for trial in range(150):
            g = random_weighted_graph(rng, rng.randrange(3, 10), 0.4)
            a = random_state(g, rng)
            got = find_nice_claw(g, a)
            if got is None:
                continue
            after = apply_claw(g, a, got)
            assert squared_weight(g, after) > squared_weight(g, a)
            seen += 1
        assert seen > 40

    def test_exhaustive_fallback_beats_greedy(self):
        # center 0 weighs 8; candidates charge 3, 2.5, 2.5 but the heaviest
        # conflicts with both others, so greedy (3 then stuck) misses the
        # pair 2.5 + 2.5 > 4
        g = ConflictGraph.from_edges(
            4,
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            [F(8), F(7), F(13, 2), F(13, 2)],
        )
        a = frozenset({0})
        got = find_nice_claw(g, a)
        assert got == Claw(center=0, talons=(2, 3))

    def test_budget_forwarded(self, fig_graph):
        g, s, _ = fig_graph
        with pytest.raises(CapExceededError):
            find_nice_claw(g, s, budget=WorkBudget(limit=1))


class TestApplyClaw:
    def test_one_claw_adds(self):
        g = ConflictGraph.from_edges(2, [])
        assert apply_claw(g, frozenset(), Claw(None, (1,))) == frozenset({1})

    def test_swap(self, fig_graph):
        g, s, t = fig_graph
        assert apply_claw(g, s, Claw(0, (5, 6))) == t

    @pytest.mark.parametrize(
        "a, claw",
        [
            (frozenset(), Claw(None, ())),  # no talons
            (frozenset(), Claw(None, (1, 2))),  # 1-claw with two talons
            (frozenset(), Claw(0, (5,))),  # center outside the solution
            (frozenset({0}), Claw(0, (4,))),  # talon not adjacent to center
            (frozenset({0, 3}), Claw(0, (3,))),  # talon inside the solution
            (frozenset({0}), Claw(0, (5, 6))),  # talons adjacent to each other
        ],
    )
    def test_rejects(self, a, claw):
        g = ConflictGraph.from_edges(
            7, [(0, 1), (0, 2), (0, 5), (0, 6), (5, 6), (0, 3)]
        )
        with pytest.raises(ValueError):
            apply_claw(g, a, claw)


class TestWishfulThinking:
    def test_worked_example(self, fig_graph):
        g, _, t = fig_graph
        got = wishful_thinking(g, 4)
        assert got == t
        assert total_weight(g, got) == 36

    def test_result_is_maximal_independent(self):
        rng = random.Random(46)
        for trial in range(10):
            got = gen_random(12, 14, 3, seed=500 + trial, weight_range=(F(1), F(5)))
            g = conflict_graph(got)
            a = wishful_thinking(g, 4)
            for u in range(g.vertex_count):
                if u not in a:
                    assert any(x in a for x in g.neighbors[u])

    def test_ratio_bound_on_conflict_graphs(self):
        rng = random.Random(47)
        for trial in range(12):
            k = rng.choice([3, 4])
            got = gen_random(
                3 * k, rng.randrange(8, 15), k, seed=600 + trial, weight_range=(F(1), F(5))
            )
            a = wishful_thinking(conflict_graph(got), k + 1)
            assert max_packing_value(got) / total_weight(conflict_graph(got), a) <= F(k + 1, 2)

    def test_claw_free_check(self):
        star = ConflictGraph.from_edges(5, [(0, v) for v in range(1, 5)])
        with pytest.raises(ValueError):
            wishful_thinking(star, 4)
        assert wishful_thinking(star, 5) == frozenset({1, 2, 3, 4})
        assert wishful_thinking(star, 4, check_claw_free=False) is not None

    def test_stats_count_applied_claws(self, fig_graph):
        g, _, _ = fig_graph
        stats = SearchStats()
        wishful_thinking(g, 4, stats=stats)
        assert stats.iterations >= 2


class TestSquareImp:
    def test_worked_example(self, fig_graph):
        g, _, t = fig_graph
        assert square_imp(g, max_talons=3) == t

    def test_local_optimum_has_no_positive_swap(self):
        rng = random.Random(48)
        for trial in range(10):
            g = random_weighted_graph(rng, rng.randrange(4, 10), 0.4)
            a = square_imp(g)
            w2 = lambda xs: sum(g.weights[x] ** 2 for x in xs)
            for v in range(g.vertex_count):
                if v in a:
                    continue
                removed = {x for x in g.neighbors[v] if x in a}
                assert w2([v]) <= w2(removed)

    def test_ratio_bound_on_conflict_graphs(self):
        rng = random.Random(49)
        for trial in range(10):
            k = rng.choice([3, 4])
            got = gen_random(
                3 * k, rng.randrange(8, 14), k, seed=700 + trial, weight_range=(F(1), F(5))
            )
            g = conflict_graph(got)
            a = square_imp(g, max_talons=k)
            assert max_packing_value(got) / total_weight(g, a) <= F(k + 1, 2)

    def test_max_talons_limits_swaps(self):
        # triangle-free star: center 0 in, three independent talons improve
        # jointly but not in pairs
        g = ConflictGraph.from_edges(
            4, [(0, 1), (0, 2), (0, 3)], [F(5), F(3), F(3), F(3)]
        )
        capped = square_imp(g, max_talons=2)
        assert capped == frozenset({0})
        assert square_imp(g, max_talons=3) == frozenset({1, 2, 3})


class TestGreedy:
    def test_takes_heaviest_first(self, fig_graph):
        g, _, t = fig_graph
        assert greedy_weighted(g) == t

    def test_tie_by_id(self):
        g = ConflictGraph.from_edges(3, [(0, 1), (1, 2)])
        assert greedy_weighted(g) == frozenset({0, 2})

    def test_maximal(self):
        rng = random.Random(50)
        for trial in range(10):
            g = random_weighted_graph(rng, rng.randrange(3, 12), 0.4)
            a = greedy_weighted(g)
            for u in range(g.vertex_count):
                assert u in a or any(x in a for x in g.neighbors[u])

    def test_ratio_bound_k(self):
        rng = random.Random(51)
        for trial in range(10):
            k = rng.choice([3, 4])
            got = gen_random(
                3 * k, rng.randrange(8, 14), k, seed=800 + trial, weight_range=(F(1), F(5))
            )
            g = conflict_graph(got)
            assert max_packing_value(got) / total_weight(g, greedy_weighted(g)) <= k


class TestRescaledRun:
    def test_rescale_floor(self):
        g = ConflictGraph.from_edges(3, [(0, 1)], [F(3, 2), F(2), F(7, 3)])
        floored, scale = rescale_floor_weights(g, frozenset({0, 1}), 3)
        assert scale == F(9) / F(7, 2)
        assert floored == [int(F(3, 2) * scale), int(F(2) * scale), int(F(7, 3) * scale)]

    def test_rejects_empty_base(self):
        g = ConflictGraph.from_edges(2, [])
        with pytest.raises(ValueError):
            rescale_floor_weights(g, frozenset(), 3)

    def test_matches_wishful_on_unit_weights(self):
        rng = random.Random(52)
        for trial in range(8):
            got = gen_random(12, rng.randrange(8, 15), 3, seed=900 + trial)
            g = conflict_graph(got)
            assert rescaled_run(g, 3) == wishful_thinking(g, 4)

    def test_iteration_cap(self):
        rng = random.Random(53)
        for trial in range(10):
            got = gen_random(12, 15, 3, seed=1000 + trial, weight_range=(F(1), F(5)))
            g = conflict_graph(got)
            stats = SearchStats()
            rescaled_run(g, 3, stats=stats)
            assert stats.iterations <= 9 * g.vertex_count

    def test_empty_graph(self):
        assert rescaled_run(ConflictGraph.from_edges(0, []), 3) == frozenset()


class TestPowerLocalSearch:
    def test_alpha_three_halves_stays_put(self, fig_graph):
        g, s, _ = fig_graph
        assert power_local_search(g, F(3, 2), 2, start=s) == s

    def test_alpha_eight_fifths_jumps(self, fig_graph):
        g, s, t = fig_graph
        assert power_local_search(g, F(8, 5), 2, start=s) == t

    def test_integer_alpha_exact(self, fig_graph):
        g, s, t = fig_graph
        assert power_local_search(g, F(2), 2, start=s) == t
        # alpha = 1 is undistorted weight, and plain 2-swaps climb from the
        # greedy hubs back to the heavier five-spoke solution
        assert power_local_search(g, F(1), 2) == s

    def test_default_start_is_greedy(self, fig_graph):
        g, _, t = fig_graph
        assert power_local_search(g, F(3, 2), 2) == t

    def test_result_independent_and_deterministic(self):
        rng = random.Random(54)
        for trial in range(6):
            g = random_weighted_graph(rng, rng.randrange(4, 10), 0.4)
            a = power_local_search(g, F(3, 2), 2)
            b = power_local_search(g, F(3, 2), 2)
            assert a == b
            for x, y in itertools.combinations(sorted(a), 2):
                assert y not in g.neighbors[x]

    def test_rejects_bad_parameters(self, fig_graph):
        g, s, _ = fig_graph
        with pytest.raises(ValueError):
            power_local_search(g, F(0), 2)
        with pytest.raises(ValueError):
            power_local_search(g, F(3, 2), 0)
        with pytest.raises(ValueError):
            power_local_search(g, F(3, 2), 2, start=frozenset({5, 1}))
