"""Metrics, weight campaigns, and the benchmark runner.

Coverage is the Monte-Carlo estimate of the unit-hypercube hypervolume
weakly dominated by a normalized solution set.  The benchmark runner
builds seeded roadmap instances, runs a set of solvers per trial, and
aggregates coverage, unique Pareto solutions, percentage error against
the exact weighted-maximum optimum, and runtime ratios against the
weighted-sum baseline.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import lns
from .environment import GridEnvironment, PrmConfig, build_prm, load_grid
from .graph import (COST_REL_TOL, GraphError, MoGraph, NoPathError, Path,
                    pareto_filter, wm_cost)
from .solvers import wm_beam, wm_exact, wm_poly, ws_astar

# Instances larger than this use the beam solver inside weight balancing.
BALANCE_EXACT_LIMIT = 350


def normalize_objectives(costs: Sequence[Sequence[float]]) -> np.ndarray:
    """Min-max scale each objective over the union of records to [0, 1].

    Constant objectives map to 0.  Dominance relations are preserved
    because the scaling is affine and increasing per component.
    """
    arr = np.asarray(costs, dtype=float)
    if arr.size == 0:
        return arr.reshape(0, 0)
    lo = arr.min(axis=0)
    hi = arr.max(axis=0)
    span = hi - lo
    out = np.zeros_like(arr)
    nonconst = span > 0
    out[:, nonconst] = (arr[:, nonconst] - lo[nonconst]) / span[nonconst]
    return out


def coverage(normalized: Sequence[Sequence[float]], n_samples: int = 100_000,
             seed: int = 0) -> float:
    """Fraction of uniform samples in [0,1]^n weakly dominated by the set."""
    arr = np.asarray(normalized, dtype=float)
    if arr.size == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    samples = rng.uniform(0.0, 1.0, size=(int(n_samples), arr.shape[1]))
    covered = np.zeros(len(samples), dtype=bool)
    for point in arr:
        covered |= np.all(samples >= point, axis=1)
    return float(covered.mean())


def unique_solutions(costs: Sequence[Sequence[float]],
                     rel_tol: float = COST_REL_TOL) -> int:
    """Count distinct Pareto-optimal cost vectors among the records."""
    front = pareto_filter(costs)
    distinct: list[np.ndarray] = []
    for c in front:
        if not any(np.allclose(c, d, rtol=rel_tol, atol=0.0) for d in distinct):
            distinct.append(c)
    return len(distinct)


def percent_error(cost: float, optimum: float) -> float:
    """Percentage error of ``cost`` relative to a positive optimum."""
    if optimum <= 0.0:
        raise GraphError("optimum must be positive for a percentage error")
    return 100.0 * (cost - optimum) / optimum


def spread(cost: Sequence[float], weights: Sequence[float]) -> float:
    """Spread of the weighted objective values, max minus min."""
    weighted = np.asarray(weights, float) * np.asarray(cost, float)
    return float(weighted.max() - weighted.min())


def balanced_weights(graph: MoGraph, start: int, goal: int, rounds: int = 5,
                     beam: int = 10, exact_limit: int = BALANCE_EXACT_LIMIT
                     ) -> np.ndarray:
    """Weights making the weighted objective values approximately equal.

    Iterative rebalancing: starting uniform, solve the weighted-maximum
    problem (beam search beyond ``exact_limit`` vertices), reweight each
    objective inversely to its realized cost, and keep the candidate with
    the smallest weighted-value spread.
    """
    n = graph.n_objectives
    if n == 1:
        return np.ones(1)
    solver = wm_exact if graph.n_vertices <= exact_limit else (
        lambda g, s, t, w: wm_beam(g, s, t, w, beam))
    w = np.full(n, 1.0 / n)
    best_w = w
    best_spread = np.inf
    for _ in range(rounds + 1):
        path = solver(graph, start, goal, w)
        s = spread(path.cost, w)
        if s < best_spread:
            best_spread = s
            best_w = w
        raw = 1.0 / np.maximum(path.cost, 1e-9)
        w = raw / raw.sum()
    return best_w


def random_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample from the unit simplex."""
    return rng.dirichlet(np.ones(n))


# ---------------------------------------------------------------------------
# Records and reports
# ---------------------------------------------------------------------------

@dataclass
class SolutionRecord:
    """One solver run on one instance."""

    solver: str
    instance: str
    seed: int
    weights: np.ndarray
    path: Path | None
    cost: np.ndarray | None
    seconds: float
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.path is not None


@dataclass
class BenchmarkReport:
    """Aggregated benchmark results plus the raw per-trial rows."""

    config: dict
    solvers: list[str]
    aggregates: dict[str, dict]
    records: list[SolutionRecord] = field(default_factory=list)

    def to_json(self, include_timing: bool = True) -> str:
        aggregates = {}
        for name, agg in self.aggregates.items():
            entry = dict(agg)
            if not include_timing:
                entry.pop("mean_runtime_seconds", None)
                entry.pop("mean_runtime_ratio", None)
            aggregates[name] = entry
        payload = {
            "config": self.config,
            "solvers": self.solvers,
            "aggregates": aggregates,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        """One row per (trial, solver) with weights, costs, and runtime."""
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["instance", "solver", "seed", "weights", "cost",
                         "wm_cost", "seconds", "error"])
        for rec in self.records:
            wm = (wm_cost(rec.cost, rec.weights) if rec.ok else "")
            writer.writerow([
                rec.instance, rec.solver, rec.seed,
                " ".join(f"{x:.12g}" for x in rec.weights),
                " ".join(f"{x:.12g}" for x in rec.cost) if rec.ok else "",
                f"{wm:.12g}" if rec.ok else "",
                f"{rec.seconds:.6f}",
                rec.error or "",
            ])
        return out.getvalue()


@dataclass
class BenchmarkConfig:
    """Campaign description consumed by ``run_benchmark``."""

    maps: list[dict]                 # entries with "name" and "text" or "path"
    prm_sizes: list[int]
    solvers: list[str]
    trials: int = 10
    seed: int = 0
    k_neighbors: int = 8
    weight_mode: str = "balanced"    # "balanced" or "random"
    budget: int = 30
    beam: int = 30
    coverage_samples: int = 100_000
    include_risk: bool | None = None
    lns_params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.solvers:
            raise GraphError("benchmark needs at least one solver")
        unknown = set(self.solvers) - set(SOLVER_NAMES)
        if unknown:
            raise GraphError(f"unknown solver(s): {sorted(unknown)}")
        if self.weight_mode not in ("balanced", "random"):
            raise GraphError("weight_mode must be 'balanced' or 'random'")
        if self.trials < 1:
            raise GraphError("trials must be at least 1")
        if not self.maps or not self.prm_sizes:
            raise GraphError("benchmark needs at least one map and one size")

    @classmethod
    def from_json(cls, data) -> "BenchmarkConfig":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise GraphError(f"unknown benchmark option(s): {sorted(unknown)}")
        return cls(**data)


def make_solver(name: str, budget: int = 30, beam: int = 30,
                lns_params: dict | None = None, seed: int | None = None
                ) -> Callable[[MoGraph, int, int, np.ndarray], Path]:
    """Bind a solver name to a ``(graph, start, goal, weights) -> Path`` call."""
    if name == "ws":
        return ws_astar
    if name == "wm":
        return wm_exact
    if name == "wm-poly":
        return lambda g, s, t, w: wm_poly(g, s, t, w, budget)
    if name == "wm-beam":
        return lambda g, s, t, w: wm_beam(g, s, t, w, beam)
    if name == "wm-lns":
        overrides = dict(lns_params or {})
        if seed is not None and "seed" not in overrides:
            overrides["seed"] = seed
        params = lns.LnsParams.from_json(overrides)
        return lambda g, s, t, w: lns.solve(g, s, t, w, params)
    raise GraphError(f"unknown solver {name!r}")


SOLVER_NAMES = ("ws", "wm", "wm-poly", "wm-beam", "wm-lns")


def _resolve_map(entry: dict) -> tuple[str, GridEnvironment]:
    name = entry.get("name") or entry.get("path") or "map"
    if "text" in entry:
        text = entry["text"]
    elif "path" in entry:
        with open(entry["path"], "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise GraphError("map entry needs a 'text' or 'path' field")
    return str(name), load_grid(text, cell_size=float(entry.get("cell_size", 1.0)))


def run_benchmark(config: BenchmarkConfig, progress: Callable[[str], None] | None = None,
                  jobs: int = 1) -> BenchmarkReport:
    """Run the configured campaign and aggregate a report.

    A trial builds a fresh seeded roadmap, picks random endpoints, chooses
    weights per ``weight_mode``, and times every solver on it.  Per-trial
    failures are recorded, not fatal.  Fixed seeds make everything except
    wall-clock timings reproducible.
    """
    envs = [_resolve_map(entry) for entry in config.maps]
    trial_specs = []
    index = 0
    for map_name, env in envs:
        for size in config.prm_sizes:
            for t in range(config.trials):
                trial_specs.append((map_name, env, size, config.seed + index, t))
                index += 1

    records: list[SolutionRecord] = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_trial_worker,
                              [(config, spec) for spec in trial_specs])
            for chunk in chunks:
                records.extend(chunk)
    else:
        for spec in trial_specs:
            if progress is not None:
                progress(f"instance {spec[0]}/{spec[2]}n seed {spec[3]}")
            records.extend(_trial_worker((config, spec)))

    aggregates = summarize_records(records, config.solvers,
                                   coverage_samples=config.coverage_samples,
                                   coverage_seed=config.seed)
    cfg = {k: v for k, v in vars(config).items() if k != "maps"}
    cfg["maps"] = [name for name, _ in envs]
    return BenchmarkReport(config=cfg, solvers=list(config.solvers),
                           aggregates=aggregates, records=records)


def _trial_worker(payload) -> list[SolutionRecord]:
    config, (map_name, env, size, seed, trial) = payload
    instance = f"{map_name}/{size}n/t{trial}"
    prm = PrmConfig(n_nodes=size, k_neighbors=config.k_neighbors, seed=seed,
                    include_risk=config.include_risk)
    graph = build_prm(env, prm)
    rng = np.random.default_rng(seed)
    start, goal = (int(v) for v in rng.choice(graph.n_vertices, size=2, replace=False))
    if config.weight_mode == "balanced":
        weights = balanced_weights(graph, start, goal)
    else:
        weights = random_weights(graph.n_objectives, rng)

    records = []
    for name in config.solvers:
        solver = make_solver(name, budget=config.budget, beam=config.beam,
                             lns_params=config.lns_params, seed=seed)
        t0 = time.perf_counter()
        try:
            path = solver(graph, start, goal, weights)
            elapsed = time.perf_counter() - t0
            records.append(SolutionRecord(name, instance, seed, weights,
                                          path, path.cost, elapsed))
        except NoPathError as exc:
            elapsed = time.perf_counter() - t0
            records.append(SolutionRecord(name, instance, seed, weights,
                                          None, None, elapsed, error=str(exc)))
    return records


def summarize_records(records: Sequence[SolutionRecord], solvers: Sequence[str],
                      coverage_samples: int = 100_000, coverage_seed: int = 0
                      ) -> dict[str, dict]:
    """Per-solver aggregates over a set of solution records.

    Coverage and unique-solution counts are computed per instance over the
    union-normalized records and averaged across instances; percentage
    errors use the exact weighted-maximum solver's result on the same
    instance as the optimum; runtime ratios are against the weighted-sum
    baseline on the same instance.
    """
    instances = sorted({rec.instance for rec in records})
    by_instance = {
        inst: [rec for rec in records if rec.instance == inst]
        for inst in instances
    }

    per_solver: dict[str, dict] = {
        name: {"coverage": [], "unique": [], "errors": [], "ratios": [],
               "seconds": [], "failures": 0}
        for name in solvers
    }
    for inst, recs in by_instance.items():
        ok = [rec for rec in recs if rec.ok]
        if ok:
            all_costs = np.vstack([rec.cost for rec in ok])
            normalized = normalize_objectives(all_costs)
            offset = 0
            norm_by_rec = {}
            for rec in ok:
                norm_by_rec[id(rec)] = normalized[offset]
                offset += 1
        exact = {wm_cost(rec.cost, rec.weights): rec
                 for rec in ok if rec.solver == "wm"}
        exact_value = min(exact) if exact else None
        ws_times = [rec.seconds for rec in recs if rec.solver == "ws"]
        ws_time = float(np.mean(ws_times)) if ws_times else None
        for name in solvers:
            mine = [rec for rec in recs if rec.solver == name]
            good = [rec for rec in mine if rec.ok]
            per_solver[name]["failures"] += len(mine) - len(good)
            if good:
                pts = np.vstack([norm_by_rec[id(rec)] for rec in good])
                per_solver[name]["coverage"].append(
                    coverage(pts, coverage_samples, coverage_seed))
                per_solver[name]["unique"].append(
                    unique_solutions([rec.cost for rec in good]))
                per_solver[name]["seconds"].extend(rec.seconds for rec in good)
                if exact_value is not None and exact_value > 0:
                    for rec in good:
                        per_solver[name]["errors"].append(
                            percent_error(wm_cost(rec.cost, rec.weights), exact_value))
                if ws_time is not None and ws_time > 0:
                    for rec in good:
                        per_solver[name]["ratios"].append(rec.seconds / ws_time)

    out: dict[str, dict] = {}
    for name in solvers:
        data = per_solver[name]
        out[name] = {
            "coverage": _mean_or_none(data["coverage"]),
            "unique_solutions": _mean_or_none(data["unique"]),
            "mean_percent_error": _mean_or_none(data["errors"]),
            "median_percent_error": _median_or_none(data["errors"]),
            "mean_runtime_seconds": _mean_or_none(data["seconds"]),
            "mean_runtime_ratio": _mean_or_none(data["ratios"]),
            "failures": data["failures"],
        }
    return out


def _mean_or_none(values):
    return float(np.mean(values)) if len(values) else None


def _median_or_none(values):
    return float(np.median(values)) if len(values) else None


# ---------------------------------------------------------------------------
# Weight sweeps
# ---------------------------------------------------------------------------

def weight_sweep(graph: MoGraph, start: int, goal: int, solver_name: str,
                 trials: int, seed: int = 0, budget: int = 30, beam: int = 30,
                 lns_params: dict | None = None) -> list[SolutionRecord]:
    """Run one solver across randomly sampled weights on a fixed instance."""
    if trials < 1:
        raise GraphError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    records = []
    for t in range(trials):
        w = random_weights(graph.n_objectives, rng)
        solver = make_solver(solver_name, budget=budget, beam=beam,
                             lns_params=lns_params, seed=seed + t)
        t0 = time.perf_counter()
        try:
            path = solver(graph, start, goal, w)
            records.append(SolutionRecord(solver_name, "sweep", seed + t, w,
                                          path, path.cost, time.perf_counter() - t0))
        except NoPathError as exc:
            records.append(SolutionRecord(solver_name, "sweep", seed + t, w,
                                          None, None, time.perf_counter() - t0,
                                          error=str(exc)))
    return records


def sweep_summary(records: Sequence[SolutionRecord],
                  coverage_samples: int = 100_000, coverage_seed: int = 0) -> dict:
    """Coverage and unique-solution count for one sweep's records."""
    costs = [rec.cost for rec in records if rec.ok]
    if not costs:
        return {"coverage": 0.0, "unique_solutions": 0, "trials": len(records),
                "failures": len(records)}
    normalized = normalize_objectives(np.vstack(costs))
    return {
        "coverage": coverage(normalized, coverage_samples, coverage_seed),
        "unique_solutions": unique_solutions(costs),
        "trials": len(records),
        "failures": len(records) - len(costs),
    }
