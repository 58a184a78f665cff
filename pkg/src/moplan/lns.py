"""Large neighbourhood search for weighted-maximum path planning.

The solver iteratively destroys a contiguous segment of the incumbent
path and repairs the gap by solving a weighted-sum subproblem between the
breakpoints under a freshly sampled repair weight.  Destroy heuristics
are chosen adaptively by roulette wheel over performance scores, new
solutions pass a simulated-annealing acceptance test, and for more than
two objectives repair weights come from a generalized pattern search over
the weight simplex.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

import numpy as np

from .graph import (GraphError, MoGraph, NoPathError, Path, check_weights,
                    make_path, wm_cost)
from .solvers import wm_beam, ws_astar

DESTROY_HEURISTICS = ("worst", "best", "unbalanced", "balanced", "random")

# Exponent range for log-scale repair-weight sampling.
LOG_WEIGHT_EXPONENT_RANGE = (-3.0, 0.0)

ACCEPT = "accept"
REJECT = "reject"
SKIP = "skip"


class RepairFailedError(RuntimeError):
    """The repair subproblem is disconnected; the iteration is discarded."""


@dataclass
class LnsParams:
    """Solver hyperparameters.

    ``max_iterations`` and ``non_improving_limit`` default to ``None``,
    which resolves to 400/50 for two objectives and 75/25 otherwise
    (guided weight search needs far fewer iterations than log-scale
    random sampling).
    """

    max_iterations: int | None = None
    non_improving_limit: int | None = None
    min_removed_frac: float = 0.05
    max_removed_frac: float = 0.95
    cooling_rate: float = 0.985
    start_deterioration: float = 0.5
    reheat_fraction: float = 0.95
    score_window: int = 50
    reaction_factor: float = 0.75
    reward_global: float = 15.0
    reward_improve: float = 3.0
    reward_accept: float = 1.0
    initial_beam: int = 1
    gps_iterations: int = 2
    gps_delta_min: float = 0.125
    gps_delta_max: float = 0.25
    mesh_increase: float = 2.0
    mesh_decrease: float = 0.25
    seed: int | None = None

    def __post_init__(self):
        if not (0.0 < self.cooling_rate < 1.0):
            raise GraphError("cooling_rate must lie in (0, 1)")
        if not (0.0 <= self.reaction_factor <= 1.0):
            raise GraphError("reaction_factor must lie in [0, 1]")
        if not (self.reward_global >= self.reward_improve >= self.reward_accept >= 0.0):
            raise GraphError("rewards must satisfy global >= improve >= accept >= 0")
        if not (0.0 < self.gps_delta_min < self.gps_delta_max):
            raise GraphError("need 0 < gps_delta_min < gps_delta_max")
        if not (0.0 < self.start_deterioration < 1.0):
            raise GraphError("start_deterioration must lie in (0, 1)")
        if not (0.0 < self.min_removed_frac <= self.max_removed_frac <= 1.0):
            raise GraphError("removed-vertex fractions must satisfy 0 < min <= max <= 1")
        if self.initial_beam < 1:
            raise GraphError("initial_beam must be at least 1")
        if self.score_window < 1:
            raise GraphError("score_window must be at least 1")

    def resolve(self, n_objectives: int) -> "LnsParams":
        """Fill in dimension-dependent defaults."""
        max_it = self.max_iterations
        limit = self.non_improving_limit
        if max_it is None:
            max_it = 400 if n_objectives <= 2 else 75
        if limit is None:
            limit = 50 if n_objectives <= 2 else 25
        return replace(self, max_iterations=max_it, non_improving_limit=limit)

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, data) -> "LnsParams":
        """Build params from a JSON string or dict; unknown keys rejected."""
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise GraphError(f"unknown LNS parameter(s): {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class PartialSolution:
    """Destroyed path: a prefix from the start and a suffix into the goal."""

    prefix: tuple[int, ...]
    suffix: tuple[int, ...]

    @property
    def breakpoints(self) -> tuple[int, int]:
        return self.prefix[-1], self.suffix[0]


@dataclass
class LnsState:
    """Mutable run state, kept for inspection after the solve."""

    current: Path
    best: Path
    temperature: float
    scores: dict[str, float]
    window_reward: dict[str, float]
    window_uses: dict[str, int]
    iteration: int = 0
    non_improving: int = 0
    reheat_counter: int = 0
    history_temperature: list[float] = field(default_factory=list)
    history_best: list[float] = field(default_factory=list)
    history_current: list[float] = field(default_factory=list)
    history_decision: list[str] = field(default_factory=list)
    reheat_iterations: list[int] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

def initial_solution(graph: MoGraph, start: int, goal: int,
                     weights: Sequence[float], beam: int = 1,
                     rho: float | None = None) -> Path:
    """Rapid feasible path from a narrow beam search."""
    return wm_beam(graph, start, goal, weights, beam, rho=rho)


def sample_k(path_length: int, params: LnsParams, rng: np.random.Generator) -> int:
    """Number of interior vertices to remove, uniform within the bounds.

    ``path_length`` counts the vertices of the incumbent path.  Returns 0
    when there is no interior (the iteration then re-repairs the whole
    path).
    """
    length = int(path_length)
    if length < 3:
        return 0
    # The interior size length-2 caps the window; the fraction bounds are
    # soft and collapse toward it when they disagree.
    hi = max(1, min(length - 2, math.floor(params.max_removed_frac * length)))
    lo = min(hi, max(1, math.ceil(params.min_removed_frac * length)))
    return int(rng.integers(lo, hi + 1))


def destroy(graph: MoGraph, path: Path, heuristic: str, k: int,
            weights: Sequence[float], rng: np.random.Generator,
            rho: float = 0.0) -> PartialSolution:
    """Remove a contiguous interior segment of ``k`` vertices from ``path``.

    Window scores use the summed edge costs of the segment including its
    two boundary edges.  ``worst``/``best`` take the windows with the
    highest/lowest weighted-maximum cost, ``unbalanced``/``balanced`` the
    highest/lowest mean absolute deviation of the weighted objective
    values, and ``random`` a uniform window.
    """
    if heuristic not in DESTROY_HEURISTICS:
        raise GraphError(f"unknown destroy heuristic {heuristic!r}")
    verts = path.vertices
    length = len(verts)
    if k < 1 or k > length - 2:
        raise GraphError(f"cannot remove {k} interior vertices from a "
                         f"{length}-vertex path")
    w = np.asarray(weights, dtype=float)
    starts = range(1, length - k)

    if heuristic == "random":
        i = int(rng.integers(1, length - k))
        return PartialSolution(verts[:i], verts[i + k:])

    scores = []
    for i in starts:
        # Edges touching the window: (v_{i-1}, v_i) .. (v_{i+k-1}, v_{i+k}).
        seg = np.zeros(graph.n_objectives)
        for a, b in zip(verts[i - 1:i + k], verts[i:i + k + 1]):
            seg += graph.edge_cost(a, b)
        if heuristic in ("worst", "best"):
            scores.append(wm_cost(seg, w, rho))
        else:
            weighted = w * seg
            scores.append(float(np.mean(np.abs(weighted - weighted.mean()))))
    if heuristic in ("worst", "unbalanced"):
        pick = int(np.argmax(scores))
    else:
        pick = int(np.argmin(scores))
    i = 1 + pick
    return PartialSolution(verts[:i], verts[i + k:])


def repair(graph: MoGraph, partial: PartialSolution,
           repair_weights: Sequence[float]) -> Path:
    """Reconnect a destroyed path by a weighted-sum search between breakpoints.

    Interior vertices of the prefix and suffix are excluded from the
    subproblem so the spliced result stays a simple path.  Raises
    ``RepairFailedError`` when the breakpoints are disconnected in the
    reduced graph.
    """
    v_from, v_to = partial.breakpoints
    blocked = set(partial.prefix[:-1]) | set(partial.suffix[1:])
    try:
        segment = ws_astar(graph, v_from, v_to, repair_weights, blocked=blocked)
    except NoPathError as exc:
        raise RepairFailedError(str(exc)) from exc
    verts = partial.prefix[:-1] + segment.vertices + partial.suffix[1:]
    return make_path(graph, verts)


def sample_repair_weight(n: int, rng: np.random.Generator) -> np.ndarray:
    """Simplex weight sampled on a logarithmic scale.

    Per-component exponents are uniform on [-3, 0], so component ratios
    span three orders of magnitude before normalization.
    """
    if n < 1:
        raise GraphError("need at least one objective")
    lo, hi = LOG_WEIGHT_EXPONENT_RANGE
    raw = np.power(10.0, rng.uniform(lo, hi, size=n))
    return raw / raw.sum()


def project_simplex(v: Sequence[float]) -> np.ndarray:
    """Euclidean projection onto the probability simplex.

    Sort-based exact algorithm: find the largest support whose shifted
    components stay positive, then clip.
    """
    x = np.asarray(v, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise GraphError("project_simplex expects a 1-D vector")
    u = np.sort(x)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, x.size + 1)
    mask = u - css / ks > 0.0
    rho = int(np.nonzero(mask)[0][-1])
    tau = css[rho] / (rho + 1.0)
    return np.maximum(x - tau, 0.0)


def coordinate_spanning_set(n: int) -> np.ndarray:
    """Positive spanning set of the 2n signed coordinate directions."""
    eye = np.eye(n)
    return np.vstack([eye, -eye])


def gps_repair(graph: MoGraph, partial: PartialSolution,
               eval_weights: Sequence[float], params: LnsParams,
               rng: np.random.Generator, rho: float = 0.0
               ) -> tuple[Path, np.ndarray]:
    """Pattern-search over repair weights when the simplex has dimension > 2.

    Starts from a log-scale sample and polls ``2n`` coordinate directions
    around the incumbent with step sizes drawn uniformly from the current
    mesh bounds; candidates are projected back onto the simplex and scored
    by repairing with them and evaluating the weighted-maximum cost under
    ``eval_weights``.  The mesh expands on improvement and shrinks
    otherwise.  Returns the best repaired path with its repair weight.
    """
    n = graph.n_objectives
    if n <= 2:
        raise GraphError("guided weight search is for more than two objectives")
    w_eval = check_weights(eval_weights, n)

    w_cur = sample_repair_weight(n, rng)
    best_path = repair(graph, partial, w_cur)
    best_cost = wm_cost(best_path.cost, w_eval, rho)

    delta_min = params.gps_delta_min
    delta_max = params.gps_delta_max
    directions = coordinate_spanning_set(n)
    for _ in range(params.gps_iterations):
        round_best = None
        for d in directions:
            delta = float(rng.uniform(delta_min, delta_max))
            w_cand = project_simplex(w_cur + delta * d)
            cand_path = repair(graph, partial, w_cand)
            cand_cost = wm_cost(cand_path.cost, w_eval, rho)
            if cand_cost < best_cost and (round_best is None or cand_cost < round_best[0]):
                round_best = (cand_cost, cand_path, w_cand)
        if round_best is not None:
            best_cost, best_path, w_cur = round_best
            delta_min *= params.mesh_increase
            delta_max *= params.mesh_increase
        else:
            delta_min *= params.mesh_decrease
            delta_max *= params.mesh_decrease
    return best_path, w_cur


def init_temperature(deterioration: float) -> float:
    """Start temperature accepting the given relative deterioration at 50%."""
    if not (0.0 < deterioration < 1.0):
        raise GraphError("deterioration fraction must lie in (0, 1)")
    return deterioration / math.log(2.0)


def accept(new: Path, current: Path, weights: Sequence[float], temperature: float,
           rng: np.random.Generator, rho: float = 0.0) -> str:
    """Simulated-annealing decision on the normalized cost change.

    Improvements are always accepted, exact repeats are skipped, and a
    deterioration ``delta`` is accepted with probability
    ``exp(-delta / temperature)``.
    """
    if temperature <= 0.0:
        raise GraphError("temperature must be positive")
    wm_new = wm_cost(new.cost, weights, rho)
    wm_cur = wm_cost(current.cost, weights, rho)
    delta = (wm_new - wm_cur) / (wm_cur + 1e-9)
    if delta < 0.0:
        return ACCEPT
    if delta == 0.0:
        return SKIP
    if rng.random() < math.exp(-delta / temperature):
        return ACCEPT
    return REJECT


def select_heuristic(scores: dict[str, float], rng: np.random.Generator) -> str:
    """Roulette-wheel choice proportional to the performance scores."""
    names = list(scores)
    values = [scores[name] for name in names]
    if any(v < 0.0 for v in values):
        raise GraphError("heuristic scores must be non-negative")
    total = float(sum(values))
    if total <= 0.0:
        return names[int(rng.integers(len(names)))]
    r = rng.random() * total
    acc = 0.0
    for name, value in zip(names, values):
        acc += value
        if r < acc:
            return name
    return names[-1]


def update_scores(scores: dict[str, float], window_reward: dict[str, float],
                  window_uses: dict[str, int], reaction_factor: float
                  ) -> dict[str, float]:
    """Blend each used heuristic's average window reward into its score."""
    updated = {}
    for name, s in scores.items():
        uses = window_uses.get(name, 0)
        if uses > 0:
            avg = window_reward.get(name, 0.0) / uses
            updated[name] = (1.0 - reaction_factor) * s + reaction_factor * avg
        else:
            updated[name] = s
    return updated


# ---------------------------------------------------------------------------
# Main loop
# ---------------------------------------------------------------------------

def solve(graph: MoGraph, start: int, goal: int, weights: Sequence[float],
          params: LnsParams | None = None, return_state: bool = False):
    """Minimize the weighted-maximum path cost by adaptive destroy/repair.

    Runs until ``max_iterations`` or ``non_improving_limit`` consecutive
    iterations without a new global best.  Deterministic for a fixed
    ``params.seed``.  Returns the best path found, or ``(path, state)``
    when ``return_state`` is set.
    """
    params = (params or LnsParams()).resolve(graph.n_objectives)
    w = check_weights(weights, graph.n_objectives)
    rho = graph.default_tiebreaker()
    rng = np.random.default_rng(params.seed)

    current = initial_solution(graph, start, goal, w, params.initial_beam, rho=rho)
    best = current
    t0 = init_temperature(params.start_deterioration)
    temp_base = t0
    base_iteration = 0
    reheat_at = math.ceil(params.reheat_fraction * params.non_improving_limit)

    state = LnsState(
        current=current, best=best, temperature=t0,
        scores={name: 1.0 for name in DESTROY_HEURISTICS},
        window_reward={name: 0.0 for name in DESTROY_HEURISTICS},
        window_uses={name: 0 for name in DESTROY_HEURISTICS},
    )

    while (state.iteration < params.max_iterations
           and state.non_improving < params.non_improving_limit):
        temperature = temp_base * params.cooling_rate ** (state.iteration - base_iteration)
        state.iteration += 1

        heuristic = select_heuristic(state.scores, rng)
        k = sample_k(len(current.vertices), params, rng)
        if k == 0:
            partial = PartialSolution(current.vertices[:1], current.vertices[-1:])
        else:
            partial = destroy(graph, current, heuristic, k, w, rng, rho)

        state.window_uses[heuristic] += 1
        candidate: Path | None
        try:
            if graph.n_objectives <= 2:
                w_rep = sample_repair_weight(graph.n_objectives, rng)
                candidate = repair(graph, partial, w_rep)
            else:
                candidate, _ = gps_repair(graph, partial, w, params, rng, rho)
        except RepairFailedError:
            candidate = None

        reward = 0.0
        improved_best = False
        decision = REJECT
        if candidate is not None:
            wm_new = wm_cost(candidate.cost, w, rho)
            wm_curr = wm_cost(current.cost, w, rho)
            if wm_new < wm_cost(best.cost, w, rho):
                best = candidate
                improved_best = True
            decision = accept(candidate, current, w, temperature, rng, rho)
            if decision == ACCEPT:
                current = candidate
            if improved_best:
                reward = params.reward_global
            elif decision == ACCEPT and wm_new < wm_curr:
                reward = params.reward_improve
            elif decision == ACCEPT:
                reward = params.reward_accept
        state.window_reward[heuristic] += reward

        if improved_best:
            state.non_improving = 0
            state.reheat_counter = 0
        else:
            state.non_improving += 1
            state.reheat_counter += 1

        if state.iteration % params.score_window == 0:
            state.scores = update_scores(state.scores, state.window_reward,
                                         state.window_uses, params.reaction_factor)
            state.window_reward = {name: 0.0 for name in DESTROY_HEURISTICS}
            state.window_uses = {name: 0 for name in DESTROY_HEURISTICS}

        if state.reheat_counter >= reheat_at:
            temp_base = 0.5 * t0
            base_iteration = state.iteration
            state.reheat_counter = 0
            state.reheat_iterations.append(state.iteration)

        state.current = current
        state.best = best
        state.temperature = temperature
        state.history_temperature.append(temperature)
        state.history_best.append(wm_cost(best.cost, w))
        state.history_current.append(wm_cost(current.cost, w))
        state.history_decision.append(decision if candidate is not None else "failed")

    if return_state:
        return best, state
    return best
