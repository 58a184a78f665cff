"""Multi-objective path planning toolkit.

Plans over graphs with vector-valued edge costs under weighted-sum and
weighted-maximum (Chebyshev) scalarizations.  Ships exact and budgeted
weighted-maximum solvers, an adaptive large-neighbourhood-search solver,
a 2-D grid/roadmap environment layer, and benchmark utilities.
"""

from .graph import (COST_REL_TOL, GraphError, MoGraph, NoPathError, Path,
                    costs_equal, dominates, graph_from_json, graph_to_json,
                    load_graph, make_path, pareto_filter, path_cost,
                    save_graph, weight_vector, wm_cost, ws_cost)
from .solvers import (brute_force_pareto, brute_force_wm, bwsa_transform,
                      cost_to_go, iter_simple_paths, supported_solutions,
                      wm_beam, wm_exact, wm_poly, ws_astar)
from .lns import (DESTROY_HEURISTICS, LnsParams, LnsState, PartialSolution,
                  RepairFailedError, accept, destroy, gps_repair,
                  init_temperature, initial_solution, project_simplex,
                  repair, sample_k, sample_repair_weight, select_heuristic,
                  solve, update_scores)
from .environment import (GridEnvironment, PrmConfig, RiskZone, build_prm,
                          collision_free, edge_costs, load_grid,
                          traversed_cells)
from .evaluation import (BenchmarkConfig, BenchmarkReport, SolutionRecord,
                         balanced_weights, coverage, normalize_objectives,
                         percent_error, random_weights, run_benchmark,
                         sweep_summary, unique_solutions, weight_sweep)

__version__ = "0.1.0"
