"""Command-line entry point for roadmap building, solving, and benchmarks.

Machine-readable JSON goes to stdout; progress and diagnostics go to
stderr.  Exit codes: 0 success, 2 input error, 3 no path.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import evaluation
from .environment import PrmConfig, build_prm, load_grid
from .graph import (GraphError, NoPathError, load_graph, save_graph,
                    weight_vector, wm_cost, ws_cost)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_PATH = 3


def _progress(message: str) -> None:
    print(message, file=sys.stderr)


def _load_env(args):
    with open(args.map, "r", encoding="utf-8") as fh:
        return load_grid(fh.read(), cell_size=args.cell_size)


def _resolve_graph(args):
    if getattr(args, "graph", None):
        return load_graph(args.graph)
    if getattr(args, "map", None):
        env = _load_env(args)
        config = PrmConfig(n_nodes=args.nodes, k_neighbors=args.knn,
                           seed=args.seed or 0,
                           include_risk=args.include_risk or None)
        return build_prm(env, config)
    raise GraphError("provide exactly one of --graph or --map")


def _parse_weights(raw: str, n: int) -> np.ndarray:
    try:
        values = np.asarray([float(x) for x in raw.split(",")])
    except ValueError as exc:
        raise GraphError(f"cannot parse weights {raw!r}") from exc
    if values.size != n:
        raise GraphError(f"graph has {n} objectives but {values.size} weights given")
    if np.any(values < 0) or values.sum() <= 0:
        raise GraphError("weights must be non-negative with a positive sum")
    return weight_vector(values / values.sum())


def _parse_params(raw: str | None) -> dict:
    if not raw:
        return {}
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise GraphError(f"--params is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise GraphError("--params must be a JSON object")
    return data


def cmd_build_prm(args) -> int:
    env = _load_env(args)
    config = PrmConfig(n_nodes=args.nodes, k_neighbors=args.knn,
                       seed=args.seed or 0, include_risk=args.include_risk or None)
    graph = build_prm(env, config)
    save_graph(graph, args.out)
    _progress(f"wrote {args.out}: {graph.n_vertices} nodes, "
              f"{len(graph.edges)} edges, {graph.n_objectives} objectives")
    return EXIT_OK


def cmd_solve(args) -> int:
    graph = _resolve_graph(args)
    weights = _parse_weights(args.weights, graph.n_objectives)
    overrides = _parse_params(args.params)
    if args.seed is not None and "seed" not in overrides:
        overrides["seed"] = args.seed
    solver = evaluation.make_solver(args.solver, budget=args.budget,
                                    beam=args.beam, lns_params=overrides,
                                    seed=args.seed)
    t0 = time.perf_counter()
    path = solver(graph, args.start, args.goal, weights)
    elapsed = time.perf_counter() - t0
    payload = {
        "solver": args.solver,
        "path": list(path.vertices),
        "cost": [float(x) for x in path.cost],
        "wm_cost": wm_cost(path.cost, weights),
        "ws_cost": ws_cost(path.cost, weights),
        "runtime_seconds": elapsed,
    }
    out = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    graph = _resolve_graph(args)
    overrides = _parse_params(args.params)
    records = evaluation.weight_sweep(graph, args.start, args.goal, args.solver,
                                      trials=args.trials, seed=args.seed or 0,
                                      budget=args.budget, beam=args.beam,
                                      lns_params=overrides)
    report = evaluation.BenchmarkReport(config={}, solvers=[args.solver],
                                        aggregates={}, records=records)
    csv_text = report.to_csv()
    summary = evaluation.sweep_summary(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
        with open(args.out + ".summary.json", "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2)
            fh.write("\n")
        _progress(f"wrote {args.out} and {args.out}.summary.json")
    else:
        sys.stdout.write(csv_text)
        _progress(json.dumps(summary))
    return EXIT_OK


def cmd_bench(args) -> int:
    with open(args.config, "r", encoding="utf-8") as fh:
        config = evaluation.BenchmarkConfig.from_json(fh.read())
    report = evaluation.run_benchmark(config, progress=_progress, jobs=args.jobs)
    json_path = args.out + ".json"
    csv_path = args.out + ".csv"
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json() + "\n")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(report.to_csv())
    _progress(f"wrote {json_path} and {csv_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moplan",
        description="Multi-objective path planning with weighted-maximum scalarization.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_source(p):
        p.add_argument("--graph", help="graph JSON file")
        p.add_argument("--map", help="ASCII grid map file")
        p.add_argument("--nodes", type=int, default=500,
                       help="roadmap nodes when building from --map")
        p.add_argument("--knn", type=int, default=8,
                       help="nearest-neighbour connections per node")
        p.add_argument("--cell-size", type=float, default=1.0, dest="cell_size")
        p.add_argument("--include-risk", action="store_true", dest="include_risk",
                       help="force a risk objective even without zones")

    build = sub.add_parser("build-prm", help="sample a roadmap and write graph JSON")
    build.add_argument("--map", required=True)
    build.add_argument("--nodes", type=int, default=500)
    build.add_argument("--knn", type=int, default=8)
    build.add_argument("--cell-size", type=float, default=1.0, dest="cell_size")
    build.add_argument("--include-risk", action="store_true", dest="include_risk")
    build.add_argument("--seed", type=int, default=0)
    build.add_argument("--out", required=True)
    build.set_defaults(func=cmd_build_prm)

    solve = sub.add_parser("solve", help="solve one instance and print JSON")
    add_graph_source(solve)
    solve.add_argument("--start", type=int, required=True)
    solve.add_argument("--goal", type=int, required=True)
    solve.add_argument("--solver", required=True, choices=evaluation.SOLVER_NAMES)
    solve.add_argument("--weights", required=True,
                       help="comma-separated objective weights")
    solve.add_argument("--budget", type=int, default=30, help="wm-poly label budget")
    solve.add_argument("--beam", type=int, default=30, help="wm-beam width")
    solve.add_argument("--params", help="JSON object of LNS parameter overrides")
    solve.add_argument("--seed", type=int)
    solve.add_argument("--out")
    solve.set_defaults(func=cmd_solve)

    sweep = sub.add_parser("sweep", help="random-weight sweep on one instance")
    add_graph_source(sweep)
    sweep.add_argument("--start", type=int, required=True)
    sweep.add_argument("--goal", type=int, required=True)
    sweep.add_argument("--solver", required=True, choices=evaluation.SOLVER_NAMES)
    sweep.add_argument("--trials", type=int, required=True)
    sweep.add_argument("--budget", type=int, default=30)
    sweep.add_argument("--beam", type=int, default=30)
    sweep.add_argument("--params")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out")
    sweep.set_defaults(func=cmd_sweep)

    bench = sub.add_parser("bench", help="run a benchmark campaign from a config")
    bench.add_argument("--config", required=True, help="benchmark config JSON file")
    bench.add_argument("--out", required=True, help="output prefix for .json/.csv")
    bench.add_argument("--jobs", type=int, default=1)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PATH
    except (GraphError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
