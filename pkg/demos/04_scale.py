"""Larger generated instances, where only annealing is practical.

Three runs per instance: no floor (a classical CVRP), a 75% floor on every
node, and a distance budget. The numbers printed feed the two charts of
cost and success against instance size. The budgets below are the default
rows; pass the sizes you want as arguments, e.g. ``10x2:500 30x3:1000``.
"""

import sys

from robust_vrp.bench import DEFAULT_SCALE_ROWS, run_scale

rows = DEFAULT_SCALE_ROWS[:3]
if len(sys.argv) > 1:
    rows = []
    for arg in sys.argv[1:]:
        pair, beta = arg.split(":")
        n, k = pair.split("x")
        rows.append((int(n), int(k), float(beta)))

for r in run_scale(rows, alpha_pct=75.0, seed=0):
    c0, ca, cb = r.classical.best_eval, r.constrained.best_eval, r.budgeted.best_eval
    print("N=%d K=%d" % (r.n, r.k))
    print("  no floor       cost %8.2f  success %8.4f" % (c0.total_cost, c0.total_success))
    print("  75%% floor      cost %8.2f  success %8.4f  feasible %s" % (ca.total_cost, ca.total_success, ca.feasible))
    print("  budget %-6g  cost %8.2f  success %8.4f  feasible %s" % (r.beta, cb.total_cost, cb.total_success, cb.feasible))
