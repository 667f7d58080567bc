"""Trade cost against reliability on the reference instance.

Raising the per-node floor alpha makes the cheapest plan dearer until no plan
meets it. Tightening the budget beta lowers the best reachable success.
"""

from robust_vrp import MaxSuccess, MinCost, reference_instance, solve_exact
from robust_vrp.bench import REFERENCE_ALPHAS, REFERENCE_BETAS

inst = reference_instance()

print("alpha %   cost     success")
for alpha in REFERENCE_ALPHAS:
    res = solve_exact(inst, MinCost(alpha / 100))
    if not res.feasible:
        print("%7.1f   infeasible" % alpha)
        continue
    print("%7.1f   %7.2f  %.4f" % (alpha, res.evaluation.total_cost, res.evaluation.total_success))

print("\n  beta   success  cost")
for beta in REFERENCE_BETAS:
    res = solve_exact(inst, MaxSuccess(beta))
    if not res.feasible:
        print("%6.0f   infeasible" % beta)
        continue
    print("%6.0f   %.4f   %.2f" % (beta, res.evaluation.total_success, res.evaluation.total_cost))
