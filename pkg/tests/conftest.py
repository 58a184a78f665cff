"""Shared fixtures: gadget graphs, random-graph factory, and map texts."""

import numpy as np
import pytest

from moplan import GraphError, MoGraph


@pytest.fixture
def gadget():
    """Three disjoint corridors with totals (0,10), (10,0), and (6,6).

    The (6,6) corridor is Pareto-optimal but lies off the convex-hull
    boundary of the front, so no weighted-sum weight can return it.
    Vertices: 0 start, 4 goal, corridor midpoints 1, 2, 3.
    """
    return MoGraph(5, [
        (0, 1, (0.0, 5.0)), (1, 4, (0.0, 5.0)),
        (0, 2, (5.0, 0.0)), (2, 4, (5.0, 0.0)),
        (0, 3, (3.0, 3.0)), (3, 4, (3.0, 3.0)),
    ])


@pytest.fixture
def subproblem_gadget():
    """Graph whose unsupported optimum is supported inside a subproblem.

    The best path 0-1-2-3 has cost (7.6, 7.6), off the hull boundary of
    the start-goal front {(0,9), (9,0), (7.6,7.6)}; but between the
    breakpoints 1 and 2 the direct edge is weighted-sum optimal for every
    weight, so a repair step can recover the full path.
    """
    return MoGraph(7, [
        (0, 1, (3.0, 0.0)),
        (1, 4, (5.0, 0.0)), (4, 2, (0.0, 5.0)),   # detour middle (5,5)
        (1, 2, (4.6, 4.6)),                        # balanced middle
        (2, 3, (0.0, 3.0)),
        (0, 5, (0.0, 4.5)), (5, 3, (0.0, 4.5)),   # corridor (0,9)
        (0, 6, (4.5, 0.0)), (6, 3, (4.5, 0.0)),   # corridor (9,0)
    ])


def make_random_graph(rng, n_vertices=None, n_objectives=2, edge_prob=0.35):
    """Random connected undirected graph with uniform edge costs."""
    if n_vertices is None:
        n_vertices = int(rng.integers(5, 11))
    while True:
        edges = []
        for u in range(n_vertices):
            for v in range(u + 1, n_vertices):
                if rng.random() < edge_prob:
                    edges.append((u, v, rng.uniform(0.1, 1.0, n_objectives)))
        try:
            return MoGraph(n_vertices, edges)
        except GraphError:
            continue


@pytest.fixture
def random_graph_factory():
    return make_random_graph


MAZE_MAP = """\
....................
.######.....######..
.#....#.....#....#..
.#.##.#.....#.##.#..
.#.#..#.....#.#..#..
.#.#.##.....#.#.##..
.#.#........#.#.....
.#.###.######.#.....
.#...........#......
.#####.#######......
.......#............
.######.#.########..
.#......#.#......#..
.#.######.#.####.#..
.#.#......#.#..#.#..
.#.#.######.#..#.#..
.#.#........#..#.#..
.#.##########..#.#..
.#.............#....
....................
"""

CLUTTER_MAP = """\
........................
..##..####...##...###...
..##..####...##...###...
........................
...###...##..####..##...
...###...##..####..##...
..............##........
..##..###......#..###...
..##..###.........###...
........................
.####...##...##...##....
.####...##...##...##....
........................
..##..####...##...###...
..##..####...##...###...
........................
"""

RISK_CLUTTER_MAP = (
    "risk low 0 0 23 4\n"
    "risk medium 6 5 17 10\n"
    "risk high 10 2 15 6\n" + CLUTTER_MAP
)


@pytest.fixture
def maze_text():
    return MAZE_MAP


@pytest.fixture
def clutter_text():
    return CLUTTER_MAP
