"""Baseline planners for weighted-sum and weighted-maximum path costs.

``ws_astar`` solves the weighted-sum problem exactly.  ``wm_exact`` is a
label-setting best-first search that solves the weighted-maximum problem
exactly; ``wm_poly`` and ``wm_beam`` are its budgeted variants that cap
the number of labels retained per vertex.  Brute-force enumerators serve
as test oracles on small graphs, and ``supported_solutions`` identifies
the weighted-sum-reachable subset of a Pareto front.
"""

from __future__ import annotations

import heapq
import itertools
import math
from typing import Sequence

import numpy as np

from .graph import (GraphError, MoGraph, NoPathError, Path, check_weights,
                    make_path, wm_cost)

# Exhaustive simple-path enumeration is exponential; keep oracles small.
MAX_BRUTE_FORCE_VERTICES = 14


# ---------------------------------------------------------------------------
# Cost-to-go heuristic
# ---------------------------------------------------------------------------

def cost_to_go(graph: MoGraph, goal: int) -> np.ndarray:
    """Per-vertex, per-objective lower bounds on the remaining cost to goal.

    Runs one reverse Dijkstra per objective, so ``h[v, i]`` is the exact
    single-objective shortest distance from ``v`` to ``goal`` on objective
    ``i`` — admissible and consistent for any search that sums edge costs.
    Unreachable vertices get ``inf``.
    """
    if not (0 <= goal < graph.n_vertices):
        raise GraphError(f"goal {goal} out of range")
    if graph.directed:
        radj: list[list[tuple[int, tuple[float, ...]]]] = [[] for _ in range(graph.n_vertices)]
        for u, v, c in graph.edges:
            radj[v].append((u, c))
    else:
        radj = list(graph.adj)

    h = np.full((graph.n_vertices, graph.n_objectives), np.inf)
    for i in range(graph.n_objectives):
        dist = [math.inf] * graph.n_vertices
        dist[goal] = 0.0
        heap = [(0.0, goal)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, c in radj[u]:
                nd = d + c[i]
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        h[:, i] = dist
    return h


# ---------------------------------------------------------------------------
# Weighted-sum search
# ---------------------------------------------------------------------------

def ws_astar(graph: MoGraph, start: int, goal: int, weights: Sequence[float],
             blocked: Sequence[int] = ()) -> Path:
    """Minimize the weighted-sum cost from ``start`` to ``goal``.

    With non-negative edge costs the optimum is a simple path, found here
    by best-first search on the scalarized edge costs.  ``blocked``
    vertices are excluded from the search (used by repair subproblems).
    """
    w = check_weights(weights, graph.n_objectives)
    _check_endpoints(graph, start, goal)
    if start == goal:
        return make_path(graph, [start])
    forbidden = frozenset(int(b) for b in blocked)
    if start in forbidden or goal in forbidden:
        raise NoPathError(f"endpoint excluded from subgraph ({start} -> {goal})")

    wl = [float(x) for x in w]
    n = graph.n_objectives
    adj = graph.adj
    dist: dict[int, float] = {start: 0.0}
    parent: dict[int, int] = {}
    heap: list[tuple[float, int]] = [(0.0, start)]
    while heap:
        d, u = heapq.heappop(heap)
        if u == goal:
            return make_path(graph, _walk_parents(parent, start, goal))
        if d > dist.get(u, math.inf):
            continue
        for v, c in adj[u]:
            if v in forbidden:
                continue
            step = 0.0
            for i in range(n):
                step += wl[i] * c[i]
            nd = d + step
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
    raise NoPathError(f"no path from {start} to {goal}")


def _walk_parents(parent: dict[int, int], start: int, goal: int) -> list[int]:
    verts = [goal]
    while verts[-1] != start:
        verts.append(parent[verts[-1]])
    verts.reverse()
    return verts


def _check_endpoints(graph: MoGraph, start: int, goal: int) -> None:
    for name, v in (("start", start), ("goal", goal)):
        if not (0 <= v < graph.n_vertices):
            raise GraphError(f"{name} vertex {v} out of range")


# ---------------------------------------------------------------------------
# Weighted-maximum label-setting search
# ---------------------------------------------------------------------------

class _Label:
    __slots__ = ("cost", "vertex", "parent", "priority", "alive")

    def __init__(self, cost, vertex, parent, priority):
        self.cost = cost
        self.vertex = vertex
        self.parent = parent
        self.priority = priority
        self.alive = True


def wm_exact(graph: MoGraph, start: int, goal: int, weights: Sequence[float],
             rho: float | None = None) -> Path:
    """Exactly minimize the weighted-maximum cost from ``start`` to ``goal``.

    Best-first expansion on the priority ``max_i w_i (g_i + h_i(v))`` with
    per-vertex dominance pruning of accumulated cost vectors.  ``rho`` is
    the weak-Pareto tie-breaker coefficient; ``None`` uses the graph's
    scaled default and ``0.0`` disables it.
    """
    return _wm_label_search(graph, start, goal, weights, rho, cap=None, beam=False)


def wm_poly(graph: MoGraph, start: int, goal: int, weights: Sequence[float],
            budget: int | float, rho: float | None = None) -> Path:
    """Budgeted weighted-maximum search retaining labels first-in per vertex.

    Each vertex keeps at most ``budget`` non-dominated labels in arrival
    order; later arrivals are discarded even if cheaper.  Feasible but
    possibly suboptimal.  An infinite budget degenerates to ``wm_exact``.
    """
    cap = _check_cap(budget, "budget")
    return _wm_label_search(graph, start, goal, weights, rho, cap=cap, beam=False)


def wm_beam(graph: MoGraph, start: int, goal: int, weights: Sequence[float],
            beam: int | float, rho: float | None = None) -> Path:
    """Budgeted weighted-maximum search keeping the best labels per vertex.

    Like ``wm_poly`` but when a vertex is full the retained label with the
    worst priority is evicted in favour of a better newcomer.
    """
    cap = _check_cap(beam, "beam")
    return _wm_label_search(graph, start, goal, weights, rho, cap=cap, beam=True)


def _check_cap(value, name: str) -> int | None:
    if value is None or value == math.inf:
        return None
    cap = int(value)
    if cap < 1:
        raise GraphError(f"{name} must be at least 1")
    return cap


def _wm_label_search(graph: MoGraph, start: int, goal: int,
                     weights: Sequence[float], rho: float | None,
                     cap: int | None, beam: bool) -> Path:
    w = check_weights(weights, graph.n_objectives)
    _check_endpoints(graph, start, goal)
    if rho is None:
        rho = graph.default_tiebreaker()
    if rho < 0.0:
        raise GraphError("rho must be non-negative")
    if start == goal:
        return make_path(graph, [start])

    h = cost_to_go(graph, goal)
    if math.isinf(float(h[start, 0])):
        raise NoPathError(f"no path from {start} to {goal}")
    hlist: list[tuple[float, ...]] = [tuple(row) for row in h.tolist()]
    wl = [float(x) for x in w]
    n = graph.n_objectives
    idx = range(n)
    adj = graph.adj

    def priority(cost: tuple[float, ...], hv: tuple[float, ...]) -> float:
        best = 0.0
        total = 0.0
        for i in idx:
            t = cost[i] + hv[i]
            wt = wl[i] * t
            if wt > best:
                best = wt
            total += t
        return best + rho * total

    fronts: list[list[_Label]] = [[] for _ in range(graph.n_vertices)]

    def try_retain(label: _Label) -> bool:
        front = fronts[label.vertex]
        c = label.cost
        for other in front:
            oc = other.cost
            covered = True
            for i in idx:
                if oc[i] > c[i]:
                    covered = False
                    break
            if covered:
                # An existing label is no worse everywhere (equal vectors
                # keep the earlier label, so zero-cost cycles die here).
                return False
        survivors = []
        for other in front:
            oc = other.cost
            beaten = True
            for i in idx:
                if c[i] > oc[i]:
                    beaten = False
                    break
            if beaten:
                other.alive = False
            else:
                survivors.append(other)
        front[:] = survivors
        if cap is None or len(front) < cap:
            front.append(label)
            return True
        if not beam:
            return False
        worst = max(front, key=lambda lab: lab.priority)
        if label.priority < worst.priority:
            worst.alive = False
            front.remove(worst)
            front.append(label)
            return True
        return False

    zero = (0.0,) * n
    root = _Label(zero, start, None, priority(zero, hlist[start]))
    fronts[start].append(root)
    counter = itertools.count()
    heap: list[tuple[float, int, _Label]] = [(root.priority, next(counter), root)]
    inf = math.inf
    while heap:
        _, _, label = heapq.heappop(heap)
        if not label.alive:
            continue
        u = label.vertex
        if u == goal:
            return make_path(graph, _walk_labels(label))
        cost = label.cost
        for v, ec in adj[u]:
            hv = hlist[v]
            if hv[0] == inf:
                continue
            nc = tuple(cost[i] + ec[i] for i in idx)
            child = _Label(nc, v, label, priority(nc, hv))
            if try_retain(child):
                heapq.heappush(heap, (child.priority, next(counter), child))
    raise NoPathError(f"no path from {start} to {goal}")


def _walk_labels(label: _Label) -> list[int]:
    verts = []
    node: _Label | None = label
    while node is not None:
        verts.append(node.vertex)
        node = node.parent
    verts.reverse()
    return verts


# ---------------------------------------------------------------------------
# Brute-force oracles (small graphs only)
# ---------------------------------------------------------------------------

def _guard_size(graph: MoGraph) -> None:
    if graph.n_vertices > MAX_BRUTE_FORCE_VERTICES:
        raise GraphError(
            f"brute force refused: {graph.n_vertices} vertices exceeds the "
            f"{MAX_BRUTE_FORCE_VERTICES}-vertex guard")


def iter_simple_paths(graph: MoGraph, start: int, goal: int):
    """Yield every simple ``start -> goal`` path as a vertex tuple."""
    _guard_size(graph)
    _check_endpoints(graph, start, goal)
    adj = graph.adj
    stack: list[int] = [start]
    on_path = {start}

    def dfs():
        u = stack[-1]
        if u == goal:
            yield tuple(stack)
            return
        for v, _ in adj[u]:
            if v in on_path:
                continue
            stack.append(v)
            on_path.add(v)
            yield from dfs()
            stack.pop()
            on_path.remove(v)

    yield from dfs()


def brute_force_pareto(graph: MoGraph, start: int, goal: int) -> list[tuple[Path, np.ndarray]]:
    """All Pareto-optimal simple paths, by exhaustive enumeration.

    Returns ``(path, cost)`` pairs; distinct paths with identical cost
    vectors are all reported.  Guarded to small graphs.
    """
    paths = [make_path(graph, verts) for verts in iter_simple_paths(graph, start, goal)]
    if not paths:
        raise NoPathError(f"no path from {start} to {goal}")
    costs = np.vstack([p.cost for p in paths])
    result = []
    for i, p in enumerate(paths):
        c = costs[i]
        others = np.delete(costs, i, axis=0)
        if len(others) and np.any(np.all(others <= c, axis=1) & np.any(others < c, axis=1)):
            continue
        result.append((p, c))
    return result


def brute_force_wm(graph: MoGraph, start: int, goal: int, weights: Sequence[float],
                   rho: float = 0.0) -> Path:
    """Weighted-maximum optimum by exhaustive enumeration (test oracle)."""
    w = check_weights(weights, graph.n_objectives)
    best: Path | None = None
    best_value = math.inf
    for verts in iter_simple_paths(graph, start, goal):
        p = make_path(graph, verts)
        value = wm_cost(p.cost, w, rho)
        if value < best_value:
            best_value = value
            best = p
    if best is None:
        raise NoPathError(f"no path from {start} to {goal}")
    return best


# ---------------------------------------------------------------------------
# Supported-solution analysis and hardness-reduction construction
# ---------------------------------------------------------------------------

def supported_solutions(front: Sequence[Sequence[float]]) -> np.ndarray:
    """Subset of a Pareto front reachable by weighted-sum scalarization.

    A front member is *supported* when some simplex weight makes it a
    weighted-sum minimizer over the front, i.e. it lies on the lower-left
    boundary of the front's convex hull.  Decided per point by a small
    feasibility LP maximizing the support margin.
    """
    arr = np.asarray(front, dtype=float)
    if arr.ndim != 2:
        arr = arr.reshape(len(arr), -1)
    m, n = arr.shape
    if m <= 2:
        return arr.copy()
    from scipy.optimize import linprog

    keep = []
    for i in range(m):
        c = arr[i]
        others = np.delete(arr, i, axis=0)
        # Variables (w_1..w_n, t): maximize t subject to w·(x - c) >= t
        # for every other front point, w on the simplex.  Supported iff
        # the optimal margin t* is nonnegative (zero on shared facets).
        a_ub = np.hstack([-(others - c), np.ones((m - 1, 1))])
        b_ub = np.zeros(m - 1)
        a_eq = np.hstack([np.ones((1, n)), np.zeros((1, 1))])
        res = linprog(c=[0.0] * n + [-1.0], A_ub=a_ub, b_ub=b_ub,
                      A_eq=a_eq, b_eq=[1.0],
                      bounds=[(0.0, 1.0)] * n + [(None, None)],
                      method="highs")
        if res.status != 0:
            raise RuntimeError(f"support LP failed: {res.message}")
        if -res.fun >= -1e-9:
            keep.append(i)
    return arr[keep]


def bwsa_transform(graph: MoGraph, weights: Sequence[float]) -> tuple[MoGraph, np.ndarray]:
    """Augment a graph so every path cost vector becomes hull-extreme.

    Appends one indicator objective per edge (1 on that edge, 0 elsewhere)
    and zero-extends the weight vector, leaving the vertex and edge sets
    unchanged.  On the transformed instance the best weighted-sum
    approximation coincides with the weighted-maximum optimum of the
    original instance.
    """
    w = check_weights(weights, graph.n_objectives)
    m = len(graph.edges)
    new_edges = []
    for j, (u, v, c) in enumerate(graph.edges):
        indicator = [0.0] * m
        indicator[j] = 1.0
        new_edges.append((u, v, tuple(c) + tuple(indicator)))
    transformed = MoGraph(graph.n_vertices, new_edges,
                          n_objectives=graph.n_objectives + m,
                          positions=graph.positions, directed=graph.directed,
                          check_connected=False)
    new_weights = np.concatenate([w, np.zeros(m)])
    return transformed, new_weights
