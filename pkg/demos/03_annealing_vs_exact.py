"""Simulated annealing against exact enumeration on small instances."""

import math

from robust_vrp import GenSpec, MaxSuccess, MinCost, SaConfig, generate, solve_exact, solve_sa
from robust_vrp.annealing import solve_sa_multistart

# one run, looking inside the result
inst = generate(GenSpec(7, 2, seed=42))
res = solve_sa(inst, MinCost(0.75), SaConfig(seed=1))
print(inst.name, "| T0 = %.4g, cooling %.3f, %d of %d moves accepted"
      % (res.initial_temperature, res.cooling, res.accepted, res.moves))
for it, f in res.objective_trace[::60]:
    print("  after %6d moves best penalized objective %.4f" % (it, f))
print("best:", res.best_solution, "feasible:", res.feasible_found)

# gap to the optimum over a handful of instances, best of five seeds each
print("\ninstance            spec                     exact       SA          gap %")
for seed in range(8):
    inst = generate(GenSpec(6, 2, seed))
    for spec in (MinCost(0.8), MaxSuccess(400.0)):
        exact = solve_exact(inst, spec)
        sa = solve_sa_multistart(inst, spec, SaConfig(), seeds=range(5))
        if not exact.feasible:
            print("%-18s  %-24s infeasible  %s" % (inst.name, spec, "infeasible" if not sa.feasible_found else "feasible (mismatch)"))
            continue
        pick = (lambda e: e.total_cost) if isinstance(spec, MinCost) else (lambda e: e.total_success)
        z, z_sa = pick(exact.evaluation), pick(sa.best_eval)
        gap = 0.0 if math.isclose(z, z_sa, rel_tol=1e-6) else 100 * (z_sa - z) / z
        print("%-18s  %-24s %-10.4f  %-10.4f  %.4f" % (inst.name, spec, z, z_sa, gap))
