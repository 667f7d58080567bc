"""Route cost, prefix success rates, feasibility and the penalized objective."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import DEPOT, Evaluation, Instance, MaxSuccess, MinCost, ObjectiveSpec, Solution

# Violations at or below this level count as satisfied.
TOL = 1e-9


class InvalidSolutionError(ValueError):
    """The routes do not partition the customers or use too many vehicles."""


@dataclass(frozen=True)
class PenaltyConfig:
    big_m: float

    def __post_init__(self):
        if not self.big_m > 0:
            raise ValueError(f"big_m must be positive, got {self.big_m!r}")

    @classmethod
    def for_instance(cls, instance: Instance, scale: float = 1e6) -> "PenaltyConfig":
        """Default multiplier: ``scale`` times the longest arc."""
        return cls(scale * max(instance.diameter, 1.0))


def _excess(x: float) -> float:
    return x if x > TOL else 0.0


def route_cost(instance: Instance, route: Sequence[int]) -> float:
    """Depot -> customers in order -> depot; 0 for an empty route."""
    if not route:
        return 0.0
    c = instance.cost_rows
    total = 0.0
    prev = DEPOT
    for node in route:
        total += c[prev][node]
        prev = node
    return total + c[prev][DEPOT]


def node_success(instance: Instance, route: Sequence[int]) -> dict[int, float]:
    """Probability of reaching each customer of ``route`` un-interdicted.

    The k-th customer gets the product of the first k arc probabilities
    out of the depot. The return arc never counts.
    """
    p = instance.success_rows
    out = {}
    phi = 1.0
    prev = DEPOT
    for node in route:
        phi *= p[prev][node]
        out[node] = phi
        prev = node
    return out


def route_stats(instance: Instance, route: Sequence[int], alpha: float = 0.0):
    """(cost, load, success sum, alpha shortfall) of one route in one pass."""
    if not route:
        return 0.0, 0.0, 0.0, 0.0
    c = instance.cost_rows
    p = instance.success_rows
    d = instance.demand_list
    cost = load = succ = short = 0.0
    phi = 1.0
    prev = DEPOT
    for node in route:
        cost += c[prev][node]
        phi *= p[prev][node]
        load += d[node]
        succ += phi
        if phi < alpha:
            short += alpha - phi
        prev = node
    return cost + c[prev][DEPOT], load, succ, short


def check_partition(instance: Instance, solution: Solution) -> None:
    seen = solution.customers()
    if sorted(seen) != list(instance.customers):
        missing = set(instance.customers) - set(seen)
        dup = {c for c in seen if seen.count(c) > 1}
        extra = set(seen) - set(instance.customers)
        raise InvalidSolutionError(
            f"routes do not partition customers (missing={sorted(missing)}, "
            f"duplicated={sorted(dup)}, unknown={sorted(extra)})"
        )
    used = len(solution.nonempty_routes())
    if used > instance.fleet_size:
        raise InvalidSolutionError(f"{used} nonempty routes exceed fleet size {instance.fleet_size}")


def evaluate(instance: Instance, solution: Solution, spec: ObjectiveSpec) -> Evaluation:
    check_partition(instance, solution)
    phis: dict[int, float] = {}
    costs, loads = [], []
    cap_violation = 0.0
    d = instance.demand_list
    for route in solution.routes:
        costs.append(route_cost(instance, route))
        load = sum(d[c] for c in route)
        loads.append(load)
        cap_violation += _excess(load - instance.capacity)
        phis.update(node_success(instance, route))
    total_cost = sum(costs)
    total_success = sum(phis.values())

    if isinstance(spec, MinCost):
        violation = _excess(sum(max(spec.alpha - phi, 0.0) for phi in phis.values()))
    elif isinstance(spec, MaxSuccess):
        violation = _excess(total_cost - spec.beta)
    else:
        raise TypeError(f"unknown objective spec {spec!r}")

    return Evaluation(
        total_cost=total_cost,
        node_success=dict(sorted(phis.items())),
        total_success=total_success,
        capacity_violation=cap_violation,
        constraint_violation=violation,
        route_loads=tuple(loads),
        route_costs=tuple(costs),
    )


def objective_value(evaluation: Evaluation, spec: ObjectiveSpec) -> float:
    """Unpenalized objective in the problem's own sense (cost or success)."""
    if isinstance(spec, MinCost):
        return evaluation.total_cost
    return evaluation.total_success


def scalar_objective(evaluation: Evaluation, spec: ObjectiveSpec, penalty: PenaltyConfig) -> float:
    """Penalized objective to minimize; success is negated in MaxSuccess mode."""
    base = evaluation.total_cost if isinstance(spec, MinCost) else -evaluation.total_success
    violation = evaluation.capacity_violation + evaluation.constraint_violation
    return base + penalty.big_m * violation if violation > 0 else base
