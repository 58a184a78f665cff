"""Baseline solvers against brute-force and independent oracles."""

import heapq
import math

import numpy as np
import pytest

from moplan import (GraphError, MoGraph, NoPathError, dominates,
                    pareto_filter, wm_cost, ws_cost)
from moplan.solvers import (brute_force_pareto, brute_force_wm,
                            bwsa_transform, cost_to_go, iter_simple_paths,
                            supported_solutions, wm_beam, wm_exact, wm_poly,
                            ws_astar)
from tests.conftest import make_random_graph


def dijkstra_oracle(graph, start, goal, weights):
    """Independent scalarized shortest-path distance (no early exit)."""
    w = np.asarray(weights, float)
    dist = {start: 0.0}
    heap = [(0.0, start)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, c in graph.adj[u]:
            nd = d + float(np.dot(w, c))
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    if goal not in dist:
        raise NoPathError("oracle: unreachable")
    return dist[goal]


class TestCostToGo:
    def test_zero_at_goal(self):
        rng = np.random.default_rng(0)
        g = make_random_graph(rng)
        h = cost_to_go(g, g.n_vertices - 1)
        assert np.allclose(h[g.n_vertices - 1], 0.0)

    def test_admissible_against_brute_force(self):
        rng = np.random.default_rng(1)
        for _ in range(15):
            g = make_random_graph(rng, n_vertices=7)
            goal = g.n_vertices - 1
            h = cost_to_go(g, goal)
            for v in range(g.n_vertices):
                if v == goal:
                    continue
                per_objective_min = np.full(g.n_objectives, math.inf)
                for verts in iter_simple_paths(g, v, goal):
                    cost = np.zeros(g.n_objectives)
                    for a, b in zip(verts, verts[1:]):
                        cost += g.edge_cost(a, b)
                    per_objective_min = np.minimum(per_objective_min, cost)
                assert np.all(h[v] <= per_objective_min + 1e-9)

    def test_directed_unreachable_is_inf(self):
        g = MoGraph(3, [(0, 1, (1.0,)), (1, 2, (1.0,))], directed=True)
        h = cost_to_go(g, 0)
        assert math.isinf(h[2, 0])


class TestWsAstar:
    def test_gadget_supported_optimum(self, gadget):
        p = ws_astar(gadget, 0, 4, (0.5, 0.5))
        assert ws_cost(p.cost, (0.5, 0.5)) == pytest.approx(5.0)
        assert tuple(p.cost.tolist()) in {(0.0, 10.0), (10.0, 0.0)}

    def test_single_edge(self):
        g = MoGraph(2, [(0, 1, (2.0, 3.0))])
        p = ws_astar(g, 0, 1, (0.5, 0.5))
        assert p.vertices == (0, 1)

    def test_start_equals_goal(self):
        g = MoGraph(2, [(0, 1, (2.0, 3.0))])
        p = ws_astar(g, 0, 0, (0.5, 0.5))
        assert p.vertices == (0,)
        assert np.allclose(p.cost, 0.0)

    def test_matches_dijkstra_oracle_on_random_graphs(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            g = make_random_graph(rng, n_vertices=10)
            w = rng.dirichlet(np.ones(2))
            p = ws_astar(g, 0, 9, w)
            assert ws_cost(p.cost, w) == pytest.approx(dijkstra_oracle(g, 0, 9, w))

    def test_no_path_error(self):
        g = MoGraph(3, [(0, 1, (1.0,)), (2, 1, (1.0,))], directed=True)
        with pytest.raises(NoPathError):
            ws_astar(g, 0, 2, (1.0,))

    def test_blocked_vertices_are_avoided(self, gadget):
        p = ws_astar(gadget, 0, 4, (0.5, 0.5), blocked=[1, 2])
        assert p.vertices == (0, 3, 4)


class TestWmExact:
    def test_gadget_unsupported_optimum(self, gadget):
        p = wm_exact(gadget, 0, 4, (0.5, 0.5))
        assert wm_cost(p.cost, (0.5, 0.5)) == pytest.approx(3.0)
        assert p.vertices == (0, 3, 4)

    def test_unit_weight_reduces_to_single_objective(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            g = make_random_graph(rng)
            goal = g.n_vertices - 1
            for j in range(g.n_objectives):
                w = np.zeros(g.n_objectives)
                w[j] = 1.0
                p = wm_exact(g, 0, goal, w, rho=0.0)
                single = cost_to_go(g, goal)[0, j]
                assert wm_cost(p.cost, w) == pytest.approx(single)

    def test_matches_brute_force_on_random_graphs(self):
        rng = np.random.default_rng(4)
        for trial in range(200):
            n_obj = 2 if trial % 2 == 0 else 3
            g = make_random_graph(rng, n_vertices=int(rng.integers(5, 13)),
                                  n_objectives=n_obj)
            w = rng.dirichlet(np.ones(n_obj))
            goal = g.n_vertices - 1
            got = wm_cost(wm_exact(g, 0, goal, w, rho=0.0).cost, w)
            want = wm_cost(brute_force_wm(g, 0, goal, w).cost, w)
            assert got == pytest.approx(want, rel=1e-12)

    def test_weight_scale_consistency(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            g = make_random_graph(rng)
            w = rng.dirichlet(np.ones(2))
            goal = g.n_vertices - 1
            base = wm_exact(g, 0, goal, w, rho=0.0)
            scaled = wm_exact(g, 0, goal, 7.5 * w, rho=0.0)
            assert np.allclose(base.cost, scaled.cost)

    def test_no_path_error(self):
        g = MoGraph(3, [(0, 1, (1.0,)), (2, 1, (1.0,))], directed=True)
        with pytest.raises(NoPathError):
            wm_exact(g, 0, 2, (1.0,))

    def test_returned_paths_are_simple(self):
        # Zero-cost edges invite cycles; equal-cost labels keep the earlier.
        g = MoGraph(4, [(0, 1, (0.0, 0.0)), (1, 2, (0.0, 0.0)),
                        (2, 3, (1.0, 1.0)), (0, 3, (5.0, 5.0))])
        p = wm_exact(g, 0, 3, (0.5, 0.5))
        assert len(set(p.vertices)) == len(p.vertices)


class TestBudgetedVariants:
    def test_infinite_budget_equals_exact(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            g = make_random_graph(rng)
            w = rng.dirichlet(np.ones(2))
            goal = g.n_vertices - 1
            exact = wm_cost(wm_exact(g, 0, goal, w, rho=0.0).cost, w)
            poly = wm_cost(wm_poly(g, 0, goal, w, math.inf, rho=0.0).cost, w)
            beam = wm_cost(wm_beam(g, 0, goal, w, math.inf, rho=0.0).cost, w)
            assert poly == pytest.approx(exact, rel=1e-12)
            assert beam == pytest.approx(exact, rel=1e-12)

    def test_budgeted_results_feasible_and_no_better_than_exact(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            g = make_random_graph(rng, n_vertices=int(rng.integers(6, 13)))
            w = rng.dirichlet(np.ones(2))
            goal = g.n_vertices - 1
            exact = wm_cost(wm_exact(g, 0, goal, w, rho=0.0).cost, w)
            for solver, cap in ((wm_poly, 1), (wm_poly, 4), (wm_beam, 1), (wm_beam, 4)):
                p = solver(g, 0, goal, w, cap, rho=0.0)
                assert len(set(p.vertices)) == len(p.vertices)
                assert wm_cost(p.cost, w) >= exact - 1e-12

    def test_poly_budget_bracket(self):
        rng = np.random.default_rng(8)
        costs1, costs4, exacts = [], [], []
        for _ in range(40):
            g = make_random_graph(rng, n_vertices=12)
            w = rng.dirichlet(np.ones(2))
            goal = g.n_vertices - 1
            exacts.append(wm_cost(wm_exact(g, 0, goal, w, rho=0.0).cost, w))
            costs1.append(wm_cost(wm_poly(g, 0, goal, w, 1, rho=0.0).cost, w))
            costs4.append(wm_cost(wm_poly(g, 0, goal, w, 4, rho=0.0).cost, w))
        assert all(c4 >= e - 1e-12 for c4, e in zip(costs4, exacts))
        assert np.median(costs4) <= np.median(costs1) + 1e-12

    def test_beam_median_monotone(self):
        rng = np.random.default_rng(9)
        medians = []
        graphs = [make_random_graph(rng, n_vertices=12) for _ in range(50)]
        weights = [rng.dirichlet(np.ones(2)) for _ in range(50)]
        for beam in (1, 2, 4, 8):
            vals = [wm_cost(wm_beam(g, 0, g.n_vertices - 1, w, beam, rho=0.0).cost, w)
                    for g, w in zip(graphs, weights)]
            medians.append(np.median(vals))
        assert all(a >= b - 1e-12 for a, b in zip(medians, medians[1:]))

    def test_invalid_budget(self):
        g = MoGraph(2, [(0, 1, (1.0,))])
        with pytest.raises(GraphError):
            wm_poly(g, 0, 1, (1.0,), 0)
        with pytest.raises(GraphError):
            wm_beam(g, 0, 1, (1.0,), 0)


class TestBruteForce:
    def test_gadget_front(self, gadget):
        front = brute_force_pareto(gadget, 0, 4)
        costs = sorted(tuple(c.tolist()) for _, c in front)
        assert costs == [(0.0, 10.0), (6.0, 6.0), (10.0, 0.0)]

    def test_single_edge(self):
        g = MoGraph(2, [(0, 1, (1.0, 1.0))])
        front = brute_force_pareto(g, 0, 1)
        assert len(front) == 1
        assert front[0][0].vertices == (0, 1)

    def test_line_graph_single_path(self):
        g = MoGraph(4, [(0, 1, (1.0,)), (1, 2, (1.0,)), (2, 3, (1.0,))])
        front = brute_force_pareto(g, 0, 3)
        assert len(front) == 1
        assert front[0][0].vertices == (0, 1, 2, 3)

    def test_size_guard(self):
        n = 16
        edges = [(i, i + 1, (1.0,)) for i in range(n - 1)]
        g = MoGraph(n, edges)
        with pytest.raises(GraphError, match="guard"):
            brute_force_pareto(g, 0, n - 1)


class TestSupportedSolutions:
    def test_gadget_front(self):
        front = np.array([[0.0, 10.0], [10.0, 0.0], [6.0, 6.0]])
        out = supported_solutions(front)
        assert sorted(map(tuple, out.tolist())) == [(0.0, 10.0), (10.0, 0.0)]

    def test_small_fronts_fully_supported(self):
        assert len(supported_solutions(np.array([[1.0, 2.0]]))) == 1
        assert len(supported_solutions(np.array([[1.0, 2.0], [2.0, 1.0]]))) == 2

    def test_equals_dense_ws_sweep(self):
        rng = np.random.default_rng(10)
        sweep_w1 = np.linspace(1e-4, 1.0 - 1e-4, 1000)
        for _ in range(30):
            g = make_random_graph(rng, n_vertices=int(rng.integers(5, 10)))
            goal = g.n_vertices - 1
            front = pareto_filter([c for _, c in brute_force_pareto(g, 0, goal)])
            expected = supported_solutions(front)
            found = set()
            for w1 in sweep_w1:
                p = ws_astar(g, 0, goal, (w1, 1.0 - w1))
                found.add(tuple(np.round(p.cost, 12)))
            got = sorted(found)
            want = sorted(tuple(np.round(c, 12)) for c in expected)
            assert got == want

    def test_sweep_contained_in_front(self):
        # Weighted-sum sweep solutions are Pareto-optimal and a strict
        # subset whenever the front has an unsupported point.
        rng = np.random.default_rng(12)
        strict_seen = False
        for _ in range(40):
            g = make_random_graph(rng, n_vertices=8)
            goal = g.n_vertices - 1
            front = {tuple(np.round(c, 12))
                     for _, c in brute_force_pareto(g, 0, goal)}
            sweep = set()
            for w1 in np.linspace(0.01, 0.99, 200):
                p = ws_astar(g, 0, goal, (w1, 1.0 - w1))
                sweep.add(tuple(np.round(p.cost, 12)))
            assert sweep <= front
            supported = supported_solutions(pareto_filter(list(front)))
            if len(supported) < len(front):
                assert len(sweep) < len(front)
                strict_seen = True
        assert strict_seen


class TestBwsaTransform:
    def test_single_edge_example(self):
        g = MoGraph(2, [(0, 1, (1.5, 2.5))])
        g2, w2 = bwsa_transform(g, (0.4, 0.6))
        assert g2.n_objectives == 3
        assert g2.edges[0][2] == (1.5, 2.5, 1.0)
        assert w2.tolist() == [0.4, 0.6, 0.0]

    def test_all_paths_non_dominated(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            g = make_random_graph(rng, n_vertices=7)
            w = rng.dirichlet(np.ones(2))
            g2, _ = bwsa_transform(g, w)
            goal = g.n_vertices - 1
            costs = [_path_of(g2, verts).cost
                     for verts in iter_simple_paths(g2, 0, goal)]
            for i, a in enumerate(costs):
                for j, b in enumerate(costs):
                    if i != j:
                        assert not dominates(a, b)

    def test_transformed_bwsa_equals_original_wm(self):
        rng = np.random.default_rng(14)
        for _ in range(20):
            g = make_random_graph(rng, n_vertices=7)
            w = rng.dirichlet(np.ones(2))
            goal = g.n_vertices - 1
            g2, w2 = bwsa_transform(g, w)
            original = wm_cost(brute_force_wm(g, 0, goal, w).cost, w)
            transformed = wm_cost(brute_force_wm(g2, 0, goal, w2).cost, w2)
            assert transformed == pytest.approx(original, rel=1e-12)


def _path_of(graph, verts):
    from moplan import make_path
    return make_path(graph, verts)
