"""Inside one LNS run: incumbent trace, temperature, heuristic scores.

Runs the solver with state capture on a cluttered two-objective roadmap
and prints how the best/current costs, the annealing temperature, and
the adaptive destroy-heuristic scores evolve.
"""

import numpy as np

from moplan import LnsParams, wm_cost
from moplan.environment import PrmConfig, build_prm, load_grid
from moplan.lns import initial_solution, solve
from moplan.solvers import wm_exact


def boxes_map(cols=48, rows=32, seed=13, n_boxes=45):
    rng = np.random.default_rng(seed)
    grid = np.zeros((rows, cols), dtype=bool)
    for _ in range(n_boxes):
        h = int(rng.integers(1, 5))
        w = int(rng.integers(1, 5))
        r = int(rng.integers(1, rows - h - 1))
        c = int(rng.integers(1, cols - w - 1))
        grid[r:r + h, c:c + w] = True
    return "\n".join("".join("#" if grid[r, c] else "." for c in range(cols))
                     for r in range(rows))


env = load_grid(boxes_map())
graph = build_prm(env, PrmConfig(n_nodes=400, k_neighbors=7, seed=8))
pos = graph.positions
start = int(np.argmin(pos[:, 0] + pos[:, 1]))
goal = int(np.argmax(pos[:, 0] + pos[:, 1]))
weights = np.array([0.35, 0.65])

init = initial_solution(graph, start, goal, weights, beam=1)
print(f"initial beam-1 path: WM cost {wm_cost(init.cost, weights):.4f}")

params = LnsParams(seed=0)
best, state = solve(graph, start, goal, weights, params, return_state=True)
print(f"ran {state.iteration} iterations, "
      f"{len(state.reheat_iterations)} reheats at {state.reheat_iterations}")

print(f"\n{'iter':>5} {'temperature':>12} {'current WM':>12} {'best WM':>10} decision")
marks = np.unique(np.linspace(0, state.iteration - 1, 12).astype(int))
for i in marks:
    print(f"{i + 1:>5} {state.history_temperature[i]:>12.5f} "
          f"{state.history_current[i]:>12.5f} {state.history_best[i]:>10.5f} "
          f"{state.history_decision[i]}")

print("\nfinal destroy-heuristic scores (roulette selection weights):")
total = sum(state.scores.values())
for name, score in state.scores.items():
    print(f"  {name:<12} {score:7.3f}  ({score / total:6.1%})")

exact = wm_exact(graph, start, goal, weights)
gap = wm_cost(best.cost, weights) - wm_cost(exact.cost, weights)
print(f"\nLNS best {wm_cost(best.cost, weights):.5f} vs exact "
      f"{wm_cost(exact.cost, weights):.5f} (gap {gap:+.2e})")
