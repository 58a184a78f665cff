"""2-D occupancy-grid environments and probabilistic roadmap construction.

Maps are ASCII grids ('.' free, '#' obstacle) optionally preceded by risk
zone declarations of the form ``risk <level> x0 y0 x1 y1`` in cell
coordinates (x = column, y = row, inclusive).  A cell ``(row, col)``
covers the square ``[col*cs, (col+1)*cs) x [row*cs, (row+1)*cs)`` with
``cs`` the cell size, so points live in ``[0, cols*cs) x [0, rows*cs)``.

Roadmap edges carry two or three objectives: Euclidean length, obstacle
closeness (length over clearance), and optionally risk (length scaled by
the highest risk level the segment touches).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .graph import GraphError, MoGraph

RISK_LEVEL_NAMES = ("low", "medium", "high")

# Clearance floor (in cells) guarding the closeness division.
CLEARANCE_EPS_CELLS = 0.1

# Default per-length risk costs for (low, medium, high) zones.
DEFAULT_RISK_LEVELS = (1.0, 5.0, 10.0)


@dataclass(frozen=True)
class RiskZone:
    """Axis-aligned rectangle of cells with a named risk level."""

    level: str
    x0: int
    y0: int
    x1: int
    y1: int

    def contains_cell(self, row: int, col: int) -> bool:
        return self.x0 <= col <= self.x1 and self.y0 <= row <= self.y1


class GridEnvironment:
    """Occupancy grid with a precomputed Euclidean clearance field."""

    def __init__(self, obstacles: np.ndarray, cell_size: float = 1.0,
                 risk_zones: Sequence[RiskZone] = ()):
        obs = np.asarray(obstacles, dtype=bool)
        if obs.ndim != 2 or obs.size == 0:
            raise GraphError("occupancy grid must be a non-empty 2-D array")
        if cell_size <= 0.0:
            raise GraphError("cell size must be positive")
        rows, cols = obs.shape
        for zone in risk_zones:
            if zone.level not in RISK_LEVEL_NAMES:
                raise GraphError(f"unknown risk level {zone.level!r}")
            if not (0 <= zone.x0 <= zone.x1 < cols and 0 <= zone.y0 <= zone.y1 < rows):
                raise GraphError(f"risk zone {zone} outside grid bounds")
        obs.setflags(write=False)
        self.obstacles = obs
        self.cell_size = float(cell_size)
        self.risk_zones = tuple(risk_zones)
        self.rows = rows
        self.cols = cols
        self.clearance = self._clearance_field()
        self._risk_grid = self._risk_level_grid()

    def _clearance_field(self) -> np.ndarray:
        """Distance from each cell center to the nearest obstacle cell center.

        With no obstacles at all, falls back to the distance from the cell
        center to the grid boundary so the closeness objective stays finite.
        """
        if self.obstacles.any():
            field = ndimage.distance_transform_edt(~self.obstacles,
                                                   sampling=self.cell_size)
        else:
            rr = np.arange(self.rows)[:, None]
            cc = np.arange(self.cols)[None, :]
            border = np.minimum(np.minimum(rr, self.rows - 1 - rr),
                                np.minimum(cc, self.cols - 1 - cc))
            field = (border + 0.5) * self.cell_size
        field = np.asarray(field, dtype=float)
        field.setflags(write=False)
        return field

    def _risk_level_grid(self) -> np.ndarray:
        """Per-cell index of the highest risk zone (0 none, 1 low .. 3 high)."""
        grid = np.zeros((self.rows, self.cols), dtype=np.int8)
        for zone in self.risk_zones:
            rank = RISK_LEVEL_NAMES.index(zone.level) + 1
            block = grid[zone.y0:zone.y1 + 1, zone.x0:zone.x1 + 1]
            np.maximum(block, rank, out=block)
        grid.setflags(write=False)
        return grid

    # -- point queries ------------------------------------------------------

    def cell_of(self, point: Sequence[float]) -> tuple[int, int]:
        """Grid cell (row, col) containing ``point``; error when out of bounds."""
        x, y = float(point[0]), float(point[1])
        col = math.floor(x / self.cell_size)
        row = math.floor(y / self.cell_size)
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise GraphError(f"point ({x}, {y}) outside the grid")
        return row, col

    def is_free(self, point: Sequence[float]) -> bool:
        row, col = self.cell_of(point)
        return not self.obstacles[row, col]

    def clearance_at(self, point: Sequence[float]) -> float:
        row, col = self.cell_of(point)
        return float(self.clearance[row, col])

    def risk_rank_at(self, point: Sequence[float]) -> int:
        row, col = self.cell_of(point)
        return int(self._risk_grid[row, col])

    @property
    def extent(self) -> tuple[float, float]:
        """Width and height of the map in length units."""
        return self.cols * self.cell_size, self.rows * self.cell_size

    def free_cells(self) -> np.ndarray:
        """(m, 2) array of free (row, col) indices."""
        return np.argwhere(~self.obstacles)


def load_grid(text: str, cell_size: float = 1.0) -> GridEnvironment:
    """Parse an ASCII map with optional ``risk`` header lines."""
    zones: list[RiskZone] = []
    grid_rows: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if not line:
            continue
        if line.split()[0] == "risk":
            parts = line.split()
            if len(parts) != 6:
                raise GraphError(f"line {lineno}: risk zones need 'risk <level> x0 y0 x1 y1'")
            level = parts[1]
            if level not in RISK_LEVEL_NAMES:
                raise GraphError(f"line {lineno}: unknown risk level {level!r}")
            try:
                x0, y0, x1, y1 = (int(p) for p in parts[2:])
            except ValueError as exc:
                raise GraphError(f"line {lineno}: risk bounds must be integers") from exc
            zones.append(RiskZone(level, min(x0, x1), min(y0, y1),
                                  max(x0, x1), max(y0, y1)))
        else:
            grid_rows.append(line)
    if not grid_rows:
        raise GraphError("map has no grid rows")
    width = len(grid_rows[0])
    for i, row in enumerate(grid_rows):
        if len(row) != width:
            raise GraphError(f"grid row {i} has length {len(row)}, expected {width}")
        bad = set(row) - {".", "#"}
        if bad:
            raise GraphError(f"grid row {i} has unknown characters {sorted(bad)}")
    obstacles = np.array([[ch == "#" for ch in row] for row in grid_rows])
    return GridEnvironment(obstacles, cell_size=cell_size, risk_zones=zones)


# ---------------------------------------------------------------------------
# Segment queries
# ---------------------------------------------------------------------------

def traversed_cells(env: GridEnvironment, p1: Sequence[float],
                    p2: Sequence[float]) -> list[tuple[int, int]]:
    """Every grid cell whose interior the open segment ``p1 -> p2`` crosses.

    Exact parametric walk: cells are read off at the midpoints between
    consecutive gridline crossings, so no cell can be skipped regardless
    of how briefly the segment clips it.
    """
    r1, c1 = env.cell_of(p1)
    r2, c2 = env.cell_of(p2)
    x1, y1 = float(p1[0]), float(p1[1])
    x2, y2 = float(p2[0]), float(p2[1])
    if (r1, c1) == (r2, c2):
        return [(r1, c1)]
    cs = env.cell_size
    ts = [0.0, 1.0]
    dx = x2 - x1
    dy = y2 - y1
    if dx != 0.0:
        lo, hi = sorted((c1, c2))
        for k in range(lo + 1, hi + 1):
            ts.append((k * cs - x1) / dx)
    if dy != 0.0:
        lo, hi = sorted((r1, r2))
        for k in range(lo + 1, hi + 1):
            ts.append((k * cs - y1) / dy)
    ts = sorted(t for t in ts if 0.0 <= t <= 1.0)
    cells = []
    seen = set()
    for a, b in zip(ts, ts[1:]):
        if b <= a:
            continue
        tm = 0.5 * (a + b)
        cell = (math.floor((y1 + tm * dy) / cs), math.floor((x1 + tm * dx) / cs))
        if cell not in seen:
            seen.add(cell)
            cells.append(cell)
    return cells


def collision_free(env: GridEnvironment, p1: Sequence[float],
                   p2: Sequence[float]) -> bool:
    """True iff the segment stays inside free space.

    Checked by exact cell traversal rather than point sampling, so thin
    obstacle clips cannot slip between samples.  Out-of-bounds endpoints
    raise an error.
    """
    for row, col in traversed_cells(env, p1, p2):
        if env.obstacles[row, col]:
            return False
    return True


def segment_samples(env: GridEnvironment, p1: Sequence[float],
                    p2: Sequence[float]) -> np.ndarray:
    """Endpoint-inclusive sample points at spacing at most half a cell."""
    a = np.asarray(p1, dtype=float)
    b = np.asarray(p2, dtype=float)
    length = float(np.linalg.norm(b - a))
    steps = max(1, math.ceil(length / (0.5 * env.cell_size)))
    t = np.linspace(0.0, 1.0, steps + 1)
    return a[None, :] + t[:, None] * (b - a)[None, :]


def edge_costs(env: GridEnvironment, p1: Sequence[float], p2: Sequence[float],
               risk_levels: Sequence[float] | None = DEFAULT_RISK_LEVELS
               ) -> np.ndarray:
    """Objective vector of a collision-free straight segment.

    Components: Euclidean length; closeness, i.e. length divided by the
    minimum clearance sampled along the segment (plus a small floor); and,
    unless ``risk_levels`` is ``None``, length times the cost of the
    highest-risk zone the segment touches (0 outside all zones).
    """
    if not collision_free(env, p1, p2):
        raise GraphError(f"segment {tuple(p1)} -> {tuple(p2)} crosses an obstacle")
    a = np.asarray(p1, dtype=float)
    b = np.asarray(p2, dtype=float)
    length = float(np.linalg.norm(b - a))
    samples = segment_samples(env, p1, p2)
    min_clear = math.inf
    max_rank = 0
    for point in samples:
        clear = env.clearance_at(point)
        if clear < min_clear:
            min_clear = clear
        rank = env.risk_rank_at(point)
        if rank > max_rank:
            max_rank = rank
    closeness = length / (CLEARANCE_EPS_CELLS * env.cell_size + min_clear)
    if risk_levels is None:
        return np.array([length, closeness])
    if len(risk_levels) != len(RISK_LEVEL_NAMES):
        raise GraphError("risk_levels needs one cost per (low, medium, high)")
    risk_cost = 0.0 if max_rank == 0 else length * float(risk_levels[max_rank - 1])
    return np.array([length, closeness, risk_cost])


# ---------------------------------------------------------------------------
# Roadmap construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrmConfig:
    """Roadmap sampling and connection parameters."""

    n_nodes: int = 500
    k_neighbors: int = 8
    seed: int = 0
    risk_levels: tuple[float, float, float] = DEFAULT_RISK_LEVELS
    include_risk: bool | None = None  # None: risk objective iff zones exist

    def __post_init__(self):
        if self.n_nodes < 2:
            raise GraphError("a roadmap needs at least two nodes")
        if self.k_neighbors < 1:
            raise GraphError("k_neighbors must be at least 1")


def build_prm(env: GridEnvironment, config: PrmConfig) -> MoGraph:
    """Sample a probabilistic roadmap over the free space.

    Draws ``n_nodes`` points uniformly over free cells, connects each to
    its ``k_neighbors`` nearest neighbours when the straight segment is
    collision-free, attaches objective vectors to the edges, and keeps the
    largest connected component.  Deterministic for a fixed seed.
    """
    free = env.free_cells()
    if len(free) == 0:
        raise GraphError("environment has no free cells")
    rng = np.random.default_rng(config.seed)
    picks = rng.integers(0, len(free), size=config.n_nodes)
    offsets = rng.uniform(0.0, 1.0, size=(config.n_nodes, 2))
    cells = free[picks]
    points = np.column_stack([
        (cells[:, 1] + offsets[:, 0]) * env.cell_size,
        (cells[:, 0] + offsets[:, 1]) * env.cell_size,
    ])

    include_risk = config.include_risk
    if include_risk is None:
        include_risk = bool(env.risk_zones)
    risk_levels = config.risk_levels if include_risk else None

    tree = cKDTree(points)
    k = min(config.k_neighbors + 1, len(points))
    _, neighbors = tree.query(points, k=k)
    if k == 1:
        neighbors = neighbors[:, None]

    candidate_pairs = set()
    for i in range(len(points)):
        for j in neighbors[i][1:]:
            pair = (min(i, int(j)), max(i, int(j)))
            if pair[0] != pair[1]:
                candidate_pairs.add(pair)

    edges = []
    for i, j in sorted(candidate_pairs):
        if collision_free(env, points[i], points[j]):
            edges.append((i, j, edge_costs(env, points[i], points[j], risk_levels)))
    if not edges:
        raise GraphError("roadmap construction produced no collision-free edges")

    keep = _largest_component(len(points), edges)
    if len(keep) < 2:
        raise GraphError("largest roadmap component has fewer than two nodes")
    remap = {old: new for new, old in enumerate(keep)}
    kept_edges = [(remap[u], remap[v], c) for u, v, c in edges
                  if u in remap and v in remap]
    return MoGraph(len(keep), kept_edges, positions=points[keep])


def _largest_component(n: int, edges: list) -> list[int]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v, _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return max(groups.values(), key=len)
