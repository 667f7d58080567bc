"""Walk through the eight-customer reference instance.

Run with ``python3 demos/01_reference_instance.py``.
"""

from robust_vrp import MaxSuccess, MinCost, Solution, evaluate, reference_instance, solve_exact

inst = reference_instance()
print(inst.n_customers, "customers,", inst.fleet_size, "vehicles of capacity", inst.capacity)
print("demands:", inst.demand_list[1:])

# a hand-written plan: two routes out of the depot
plan = Solution([[8, 2, 4, 3, 5], [6, 1, 7]])
ev = evaluate(inst, plan, MinCost(0))
print("\nplan", plan)
print("cost %.2f, expected deliveries %.4f" % (ev.total_cost, ev.total_success))
for node, phi in ev.node_success.items():
    print("  node %d reached with probability %.4f" % (node, phi))

# the same plan is not good enough once every node must be reached 90% of the time
print("feasible at alpha=0.9?", evaluate(inst, plan, MinCost(0.9)).feasible)

# exact enumeration finds the cheapest plan that is
res = solve_exact(inst, MinCost(0.9))
print("\ncheapest plan with a 90% floor:", res.solution)
print("cost %.2f after %d complete strings (%.3fs)" % (res.evaluation.total_cost, res.leaves, res.elapsed))

# or: the most reliable plan within a distance budget
res = solve_exact(inst, MaxSuccess(220))
print("\nmost reliable plan within 220:", res.solution)
print("success %.4f at cost %.2f" % (res.evaluation.total_success, res.evaluation.total_cost))
