"""Graph primitives: path algebra, scalarizations, dominance, JSON I/O."""

import json

import numpy as np
import pytest

from moplan import (GraphError, MoGraph, costs_equal, dominates,
                    graph_from_json, graph_to_json, make_path, pareto_filter,
                    path_cost, weight_vector, wm_cost, ws_cost)
from tests.conftest import make_random_graph


class TestMoGraph:
    def test_basic_construction(self):
        g = MoGraph(3, [(0, 1, (1.0, 2.0)), (1, 2, (3.0, 4.0))])
        assert g.n_vertices == 3
        assert g.n_objectives == 2
        assert not g.directed
        assert g.edge_cost(0, 1) == (1.0, 2.0)
        assert g.edge_cost(1, 0) == (1.0, 2.0)
        assert g.edge_cost(0, 2) is None

    def test_rejects_negative_costs(self):
        with pytest.raises(GraphError):
            MoGraph(2, [(0, 1, (-1.0, 2.0))])

    def test_rejects_inconsistent_dimensions(self):
        with pytest.raises(GraphError):
            MoGraph(3, [(0, 1, (1.0, 2.0)), (1, 2, (3.0,))])

    def test_rejects_duplicate_edges(self):
        with pytest.raises(GraphError):
            MoGraph(2, [(0, 1, (1.0,)), (1, 0, (2.0,))])

    def test_rejects_disconnected(self):
        with pytest.raises(GraphError):
            MoGraph(4, [(0, 1, (1.0,)), (2, 3, (1.0,))])

    def test_directed_arcs_are_one_way(self):
        g = MoGraph(2, [(0, 1, (1.0,))], directed=True)
        assert g.edge_cost(0, 1) == (1.0,)
        assert g.edge_cost(1, 0) is None

    def test_default_tiebreaker_scaling(self):
        g = MoGraph(2, [(0, 1, (4.0, 2.0))])
        assert g.default_tiebreaker() == pytest.approx(1e-6 / (2 * 4.0))


class TestWeightVector:
    def test_valid(self):
        w = weight_vector([0.25, 0.75])
        assert w.sum() == pytest.approx(1.0)

    def test_rejects_negative(self):
        with pytest.raises(GraphError):
            weight_vector([-0.1, 1.1])

    def test_rejects_bad_sum(self):
        with pytest.raises(GraphError):
            weight_vector([0.3, 0.3])


class TestPathCost:
    def test_two_edges_sum(self):
        g = MoGraph(3, [(0, 1, (1.0, 2.0)), (1, 2, (3.0, 4.0))])
        assert path_cost(g, [0, 1, 2]).tolist() == [4.0, 6.0]

    def test_single_vertex_is_zero(self):
        g = MoGraph(2, [(0, 1, (1.0, 2.0))])
        assert path_cost(g, [0]).tolist() == [0.0, 0.0]

    def test_non_adjacent_raises(self):
        g = MoGraph(3, [(0, 1, (1.0,)), (1, 2, (1.0,))])
        with pytest.raises(GraphError):
            path_cost(g, [0, 2])

    def test_matches_per_edge_oracle(self):
        rng = np.random.default_rng(7)
        g = make_random_graph(rng, n_vertices=8)
        # Fixed walk through the adjacency structure, summed by hand.
        verts = [0]
        seen = {0}
        for _ in range(5):
            nxt = [v for v, _ in g.adj[verts[-1]] if v not in seen]
            if not nxt:
                break
            verts.append(nxt[0])
            seen.add(nxt[0])
        expected = np.zeros(g.n_objectives)
        for u, v in zip(verts, verts[1:]):
            expected += np.asarray(g.edge_cost(u, v))
        assert np.allclose(path_cost(g, verts), expected, atol=1e-12)

    def test_additive_under_concatenation(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            g = make_random_graph(rng)
            paths = []
            verts = [0]
            seen = {0}
            for _ in range(6):
                nxt = [v for v, _ in g.adj[verts[-1]] if v not in seen]
                if not nxt:
                    break
                verts.append(nxt[0])
                seen.add(nxt[0])
            if len(verts) < 3:
                continue
            mid = len(verts) // 2
            left, right = verts[:mid + 1], verts[mid:]
            combined = path_cost(g, left) + path_cost(g, right)
            assert np.allclose(combined, path_cost(g, verts), atol=1e-12)

    def test_make_path_rejects_revisit(self):
        g = MoGraph(3, [(0, 1, (1.0,)), (1, 2, (1.0,)), (0, 2, (1.0,))])
        with pytest.raises(GraphError):
            make_path(g, [0, 1, 2, 0])

    def test_cached_cost_matches_recomputation(self):
        rng = np.random.default_rng(3)
        g = make_random_graph(rng)
        p = make_path(g, [0, [v for v, _ in g.adj[0]][0]])
        assert np.allclose(p.cost, path_cost(g, p.vertices), atol=1e-9)


class TestScalarizations:
    def test_ws_direct_formula(self):
        assert ws_cost((3.0, 4.0), (0.5, 0.5)) == pytest.approx(3.5)

    def test_ws_unit_weight_selects_component(self):
        assert ws_cost((3.0, 4.0), (0.0, 1.0)) == pytest.approx(4.0)

    def test_ws_uniform(self):
        assert ws_cost((6.0, 6.0, 6.0), (1 / 3, 1 / 3, 1 / 3)) == pytest.approx(6.0)

    def test_wm_direct_formula(self):
        assert wm_cost((3.0, 4.0), (0.5, 0.5)) == pytest.approx(2.0)

    def test_wm_with_tiebreaker(self):
        assert wm_cost((3.0, 4.0), (0.5, 0.5), rho=1e-6) == pytest.approx(2.000007)

    def test_wm_rejects_negative_rho(self):
        with pytest.raises(GraphError):
            wm_cost((1.0,), (1.0,), rho=-1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(GraphError):
            ws_cost((1.0, 2.0), (1.0,))
        with pytest.raises(GraphError):
            wm_cost((1.0, 2.0), (1.0,))

    def test_wm_bounded_by_ws_bounded_by_n_wm(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            n = int(rng.integers(2, 5))
            cost = rng.uniform(0.0, 10.0, n)
            w = rng.dirichlet(np.ones(n))
            wm = wm_cost(cost, w)
            ws = ws_cost(cost, w)
            assert wm <= ws + 1e-12
            assert ws <= n * wm + 1e-12


class TestDominance:
    def test_definition(self):
        assert dominates((1.0, 2.0), (2.0, 2.0))
        assert not dominates((1.0, 2.0), (1.0, 2.0))
        assert not dominates((1.0, 3.0), (3.0, 1.0))
        assert not dominates((3.0, 1.0), (1.0, 3.0))

    def test_dimension_mismatch(self):
        with pytest.raises(GraphError):
            dominates((1.0,), (1.0, 2.0))

    def test_irreflexive_and_transitive(self):
        rng = np.random.default_rng(13)
        vecs = rng.uniform(0.0, 5.0, size=(40, 3))
        for a in vecs:
            assert not dominates(a, a)
        for a in vecs[:15]:
            for b in vecs[:15]:
                for c in vecs[:15]:
                    if dominates(a, b) and dominates(b, c):
                        assert dominates(a, c)


class TestParetoFilter:
    def test_simple_front(self):
        out = pareto_filter([(1.0, 2.0), (2.0, 1.0), (2.0, 2.0)])
        assert sorted(map(tuple, out.tolist())) == [(1.0, 2.0), (2.0, 1.0)]

    def test_empty(self):
        assert len(pareto_filter([])) == 0

    def test_duplicates_collapse(self):
        out = pareto_filter([(1.0, 2.0), (1.0, 2.0), (1.0, 2.0)])
        assert len(out) == 1

    def test_matches_quadratic_oracle(self):
        rng = np.random.default_rng(17)
        vecs = rng.uniform(0.0, 1.0, size=(200, 3))
        expected = []
        for i, a in enumerate(vecs):
            if any(dominates(b, a) for j, b in enumerate(vecs) if j != i):
                continue
            if any(np.array_equal(b, a) for b in expected):
                continue
            expected.append(a)
        got = pareto_filter(vecs)
        assert sorted(map(tuple, got.tolist())) == sorted(map(tuple, np.array(expected).tolist()))

    def test_idempotent(self):
        rng = np.random.default_rng(19)
        vecs = rng.uniform(0.0, 1.0, size=(100, 2))
        once = pareto_filter(vecs)
        twice = pareto_filter(once)
        assert np.array_equal(once, twice)


class TestCostsEqual:
    def test_within_tolerance(self):
        assert costs_equal((1.0, 2.0), (1.0 + 1e-12, 2.0))
        assert not costs_equal((1.0, 2.0), (1.001, 2.0))


class TestJsonInterchange:
    def test_round_trip(self):
        g = MoGraph(3, [(0, 1, (1.0, 2.0)), (1, 2, (3.0, 4.0))],
                    positions=[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        back = graph_from_json(json.dumps(graph_to_json(g)))
        assert back.n_vertices == g.n_vertices
        assert back.n_objectives == g.n_objectives
        assert back.edges == g.edges
        assert np.allclose(back.positions, g.positions)

    def test_directed_flag_round_trip(self):
        g = MoGraph(2, [(0, 1, (1.0,))], directed=True)
        back = graph_from_json(graph_to_json(g))
        assert back.directed
        assert back.edge_cost(1, 0) is None

    def test_rejects_bad_ids(self):
        data = {"n_objectives": 1,
                "vertices": [{"id": 0}, {"id": 5}],
                "edges": [{"u": 0, "v": 5, "costs": [1.0]}]}
        with pytest.raises(GraphError):
            graph_from_json(data)

    def test_rejects_invalid_json(self):
        with pytest.raises(GraphError):
            graph_from_json("{not json")
