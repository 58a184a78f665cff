"""Multi-objective graphs, path algebra, scalarizations, and Pareto utilities.

Vertices are the integers ``0 .. n_vertices-1``.  Every edge carries a
vector of ``n_objectives`` non-negative costs; a path accumulates edge
costs component-wise.  Graphs are immutable after construction and safe
to share across concurrent solver runs.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Relative tolerance for treating two cost vectors as the same solution.
COST_REL_TOL = 1e-9

# Absolute tolerance for cached-vs-recomputed path cost agreement.
PATH_COST_ATOL = 1e-9


class GraphError(ValueError):
    """Malformed graph, path, weight vector, or interchange file."""


class NoPathError(RuntimeError):
    """No path exists between the requested endpoints."""


def weight_vector(values: Sequence[float], n: int | None = None) -> np.ndarray:
    """Validate a point on the unit simplex and return it as a float array.

    Components must be non-negative and sum to 1 within 1e-9.  ``n``
    optionally pins the expected number of objectives.
    """
    w = np.asarray(values, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise GraphError("weights must be a non-empty 1-D sequence")
    if n is not None and w.size != n:
        raise GraphError(f"expected {n} weights, got {w.size}")
    if np.any(w < 0.0):
        raise GraphError("weights must be non-negative")
    if abs(float(w.sum()) - 1.0) > 1e-9:
        raise GraphError(f"weights must sum to 1 (got {w.sum()!r})")
    return w


def check_weights(weights: Sequence[float], n: int) -> np.ndarray:
    """Lenient weight check used inside solvers.

    Requires the right dimension, non-negativity and a positive total, but
    does not force normalization: solver argmins are invariant to positive
    scaling of the weights, and property tests exercise that.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size != n:
        raise GraphError(f"expected {n} weights, got shape {w.shape}")
    if np.any(w < 0.0):
        raise GraphError("weights must be non-negative")
    if float(w.sum()) <= 0.0:
        raise GraphError("weights must have a positive sum")
    return w


class MoGraph:
    """Graph with an ``n_objectives``-component cost vector per edge.

    Parameters
    ----------
    n_vertices : int
        Number of vertices; vertex ids are ``0 .. n_vertices-1``.
    edges : iterable of ``(u, v, costs)``
        ``costs`` is a length-``n_objectives`` sequence of non-negative
        reals.  For undirected graphs each edge is listed once.
    n_objectives : int, optional
        Required only when ``edges`` is empty.
    positions : array-like of shape (n_vertices, 2), optional
        Per-vertex planar coordinates in length units.
    directed : bool
        Undirected by default; roadmap edges are bidirectional.
    check_connected : bool
        Verify (weak) connectivity on construction, as required of a
        planning graph.  Disable only for deliberately partial graphs.
    """

    __slots__ = ("n_vertices", "n_objectives", "directed", "edges", "adj",
                 "positions", "max_cost_component", "_edge_map")

    def __init__(self, n_vertices: int, edges: Iterable[tuple],
                 n_objectives: int | None = None, positions=None,
                 directed: bool = False, check_connected: bool = True):
        if n_vertices < 1:
            raise GraphError("graph needs at least one vertex")
        edge_list = []
        edge_map: dict[tuple[int, int], tuple[float, ...]] = {}
        n_obj = n_objectives
        max_comp = 0.0
        for item in edges:
            u, v, costs = item
            u, v = int(u), int(v)
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise GraphError(f"edge ({u}, {v}) out of vertex range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            c = tuple(float(x) for x in costs)
            if n_obj is None:
                n_obj = len(c)
            if len(c) != n_obj:
                raise GraphError(
                    f"edge ({u}, {v}) has {len(c)} cost components, expected {n_obj}")
            if any(x < 0.0 for x in c):
                raise GraphError(f"edge ({u}, {v}) has a negative cost component")
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in edge_map:
                raise GraphError(f"duplicate edge ({u}, {v}); multigraphs unsupported")
            edge_map[key] = c
            edge_list.append((u, v, c))
            m = max(c) if c else 0.0
            if m > max_comp:
                max_comp = m
        if n_obj is None:
            raise GraphError("n_objectives is required for an edgeless graph")
        if n_obj < 1:
            raise GraphError("need at least one objective")

        adj: list[list[tuple[int, tuple[float, ...]]]] = [[] for _ in range(n_vertices)]
        lookup: dict[tuple[int, int], tuple[float, ...]] = {}
        for u, v, c in edge_list:
            adj[u].append((v, c))
            lookup[(u, v)] = c
            if not directed:
                adj[v].append((u, c))
                lookup[(v, u)] = c

        self.n_vertices = n_vertices
        self.n_objectives = n_obj
        self.directed = bool(directed)
        self.edges = tuple(edge_list)
        self.adj = tuple(tuple(nbrs) for nbrs in adj)
        self.max_cost_component = max_comp
        self._edge_map = lookup
        if positions is not None:
            pos = np.asarray(positions, dtype=float)
            if pos.shape != (n_vertices, 2):
                raise GraphError(f"positions must have shape ({n_vertices}, 2)")
            pos.setflags(write=False)
            self.positions = pos
        else:
            self.positions = None

        if check_connected and not self.is_connected():
            raise GraphError("graph is not connected")

    def edge_cost(self, u: int, v: int) -> tuple[float, ...] | None:
        """Cost vector of the arc ``u -> v``, or ``None`` if absent."""
        return self._edge_map.get((u, v))

    def is_connected(self) -> bool:
        """Weak connectivity over the undirected view of the edge set."""
        if self.n_vertices == 1:
            return True
        undirected: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for u, v, _ in self.edges:
            undirected[u].append(v)
            undirected[v].append(u)
        seen = bytearray(self.n_vertices)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in undirected[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    queue.append(v)
        return count == self.n_vertices

    def default_tiebreaker(self) -> float:
        """Default weak-Pareto tie-breaker coefficient.

        Scaled as ``1e-6 / (n * max edge-cost component)`` so the additive
        sum term stays far below typical weighted-maximum differences.
        """
        if self.max_cost_component <= 0.0:
            return 0.0
        return 1e-6 / (self.n_objectives * self.max_cost_component)

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return (f"MoGraph({self.n_vertices} vertices, {len(self.edges)} {kind} "
                f"edges, {self.n_objectives} objectives)")


@dataclass(frozen=True, eq=False)
class Path:
    """Simple path with its cached cost vector."""

    vertices: tuple[int, ...]
    cost: np.ndarray

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    def __repr__(self) -> str:
        return f"Path({list(self.vertices)}, cost={self.cost.tolist()})"


def path_cost(graph: MoGraph, vertices: Sequence[int]) -> np.ndarray:
    """Component-wise sum of edge cost vectors along ``vertices``.

    Raises ``GraphError`` if consecutive vertices are not adjacent.  A
    single-vertex path has zero cost.
    """
    if len(vertices) == 0:
        raise GraphError("a path needs at least one vertex")
    n = graph.n_objectives
    total = [0.0] * n
    lookup = graph._edge_map
    prev = vertices[0]
    for v in vertices[1:]:
        c = lookup.get((prev, v))
        if c is None:
            raise GraphError(f"vertices {prev} and {v} are not adjacent")
        for i in range(n):
            total[i] += c[i]
        prev = v
    return np.asarray(total, dtype=float)


def make_path(graph: MoGraph, vertices: Sequence[int]) -> Path:
    """Validate a vertex sequence as a simple path and attach its cost."""
    verts = tuple(int(v) for v in vertices)
    for v in verts:
        if not (0 <= v < graph.n_vertices):
            raise GraphError(f"vertex {v} out of range")
    if len(set(verts)) != len(verts):
        raise GraphError("path revisits a vertex")
    return Path(verts, path_cost(graph, verts))


def ws_cost(cost: Sequence[float], weights: Sequence[float]) -> float:
    """Weighted-sum scalarization ``sum_i w_i * F_i``."""
    c = np.asarray(cost, dtype=float)
    w = np.asarray(weights, dtype=float)
    if c.shape != w.shape:
        raise GraphError(f"dimension mismatch: cost {c.shape} vs weights {w.shape}")
    return float(np.dot(w, c))


def wm_cost(cost: Sequence[float], weights: Sequence[float], rho: float = 0.0) -> float:
    """Weighted-maximum (Chebyshev) scalarization ``max_i w_i * F_i``.

    ``rho`` adds the tie-breaker term ``rho * sum_i F_i`` that steers
    comparisons away from weakly Pareto-optimal solutions; reported costs
    conventionally use ``rho = 0``.
    """
    if rho < 0.0:
        raise GraphError("rho must be non-negative")
    c = np.asarray(cost, dtype=float)
    w = np.asarray(weights, dtype=float)
    if c.shape != w.shape:
        raise GraphError(f"dimension mismatch: cost {c.shape} vs weights {w.shape}")
    return float(np.max(w * c) + rho * float(c.sum()))


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and better somewhere."""
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape:
        raise GraphError(f"dimension mismatch: {av.shape} vs {bv.shape}")
    return bool(np.all(av <= bv) and np.any(av < bv))


def pareto_filter(costs: Iterable[Sequence[float]]) -> np.ndarray:
    """Non-dominated members of a set of cost vectors.

    Exact duplicates are collapsed to their first occurrence.  Returns an
    array of shape ``(k, n)`` with rows in input order.
    """
    rows = [np.asarray(c, dtype=float) for c in costs]
    if not rows:
        return np.empty((0, 0))
    arr = np.vstack(rows)
    # A vector can only be dominated by one with a smaller component sum,
    # so processing in sum order needs a single pass over the kept set.
    order = np.argsort(arr.sum(axis=1), kind="stable")
    keep: list[int] = []
    for i in order:
        c = arr[i]
        if keep:
            kept = arr[keep]
            duplicate = np.any(np.all(kept == c, axis=1))
            dominated = np.any(np.all(kept <= c, axis=1) & np.any(kept < c, axis=1))
            if duplicate or dominated:
                continue
        keep.append(int(i))
    keep.sort()
    return arr[keep]


def costs_equal(a: Sequence[float], b: Sequence[float],
                rel_tol: float = COST_REL_TOL) -> bool:
    """Equality of cost vectors under the solution-uniqueness tolerance."""
    return bool(np.allclose(np.asarray(a, float), np.asarray(b, float),
                            rtol=rel_tol, atol=0.0))


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def graph_to_json(graph: MoGraph) -> dict:
    """Serializable dict in the graph interchange format."""
    vertices = []
    for i in range(graph.n_vertices):
        entry: dict = {"id": i}
        if graph.positions is not None:
            entry["pos"] = [float(graph.positions[i, 0]), float(graph.positions[i, 1])]
        vertices.append(entry)
    edges = [{"u": u, "v": v, "costs": list(c)} for u, v, c in graph.edges]
    data = {
        "n_objectives": graph.n_objectives,
        "vertices": vertices,
        "edges": edges,
    }
    if graph.directed:
        data["directed"] = True
    return data


def graph_from_json(data) -> MoGraph:
    """Build a graph from the interchange format (dict or JSON string).

    Vertex ids must be exactly ``0 .. len(vertices)-1`` in any order;
    re-index externally generated graphs before import.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    try:
        n_obj = int(data["n_objectives"])
        raw_vertices = data["vertices"]
        raw_edges = data["edges"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"graph JSON missing required field: {exc}") from exc
    directed = bool(data.get("directed", False))

    ids = []
    pos_by_id = {}
    for entry in raw_vertices:
        vid = int(entry["id"])
        ids.append(vid)
        if "pos" in entry:
            p = entry["pos"]
            if len(p) != 2:
                raise GraphError(f"vertex {vid} position must be 2-D")
            pos_by_id[vid] = (float(p[0]), float(p[1]))
    n_vertices = len(ids)
    if sorted(ids) != list(range(n_vertices)):
        raise GraphError("vertex ids must be exactly 0..n-1")
    positions = None
    if pos_by_id:
        if len(pos_by_id) != n_vertices:
            raise GraphError("either all vertices carry a position or none do")
        positions = np.asarray([pos_by_id[i] for i in range(n_vertices)])

    edges = []
    for entry in raw_edges:
        try:
            edges.append((int(entry["u"]), int(entry["v"]), entry["costs"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed edge entry {entry!r}") from exc
    return MoGraph(n_vertices, edges, n_objectives=n_obj, positions=positions,
                   directed=directed)


def save_graph(graph: MoGraph, path) -> None:
    """Write a graph to ``path`` in the JSON interchange format."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(graph), fh)
        fh.write("\n")


def load_graph(path) -> MoGraph:
    """Load a graph from a JSON interchange file."""
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json(fh.read())
