"""Weighted-sum vs weighted-maximum on a three-corridor toy graph.

The graph has three disjoint corridors from vertex 0 to vertex 4 with
total costs (0, 10), (10, 0), and (6, 6).  All three are Pareto-optimal,
but the balanced (6, 6) corridor lies off the convex-hull boundary of
the front, so no weighted-sum weight can ever return it.  The weighted
maximum finds it immediately.
"""

import numpy as np

from moplan import MoGraph, pareto_filter, wm_cost, ws_cost
from moplan.solvers import (brute_force_pareto, supported_solutions,
                            wm_exact, ws_astar)

graph = MoGraph(5, [
    (0, 1, (0.0, 5.0)), (1, 4, (0.0, 5.0)),   # corridor A: (0, 10)
    (0, 2, (5.0, 0.0)), (2, 4, (5.0, 0.0)),   # corridor B: (10, 0)
    (0, 3, (3.0, 3.0)), (3, 4, (3.0, 3.0)),   # corridor C: (6, 6)
])

print("Full Pareto front (exhaustive enumeration):")
front = [cost for _, cost in brute_force_pareto(graph, 0, 4)]
for cost in front:
    print("   ", cost.tolist())

supported = supported_solutions(pareto_filter(front))
print("\nSupported subset (reachable by some weighted-sum weight):")
for cost in supported:
    print("   ", cost.tolist())

# Sweep weighted-sum weights densely: the (6, 6) corridor never appears.
seen = set()
for w1 in np.linspace(0.0, 1.0, 1001):
    path = ws_astar(graph, 0, 4, (w1, 1.0 - w1))
    seen.add(tuple(path.cost.tolist()))
print(f"\nWeighted-sum sweep over 1001 weights returned {sorted(seen)}")

# The weighted maximum recovers the balanced corridor at equal weights.
w = (0.5, 0.5)
ws_path = ws_astar(graph, 0, 4, w)
wm_path = wm_exact(graph, 0, 4, w)
print(f"\nAt weights {w}:")
print(f"  weighted-sum optimum  cost={ws_path.cost.tolist()}  "
      f"WS={ws_cost(ws_path.cost, w):.2f}  WM={wm_cost(ws_path.cost, w):.2f}")
print(f"  weighted-max optimum  cost={wm_path.cost.tolist()}  "
      f"WS={ws_cost(wm_path.cost, w):.2f}  WM={wm_cost(wm_path.cost, w):.2f}")

# The n-factor guarantee: WM(ws optimum) <= n * WM(wm optimum).
n = graph.n_objectives
lhs = wm_cost(ws_path.cost, w)
rhs = n * wm_cost(wm_path.cost, w)
print(f"\nApproximation bound: WM(P_ws) = {lhs:.2f} <= {n} * WM(P_wm) = {rhs:.2f}")
