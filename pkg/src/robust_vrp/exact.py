"""Exhaustive search over solution strings.

A solution string is a permutation of the customers interleaved with
``fleet_size - 1`` separators; cutting it at the separators yields one
route per vehicle. Every distinct string is enumerated depth-first in
lexicographic order (the separator sorts before every customer), prefixes
that already break capacity, the success floor or the cost budget are cut,
and the best feasible decoding is kept.

Ties: MinCost prefers lower cost, then higher total success; MaxSuccess
prefers higher success, then lower cost. Remaining ties go to the
lexicographically smallest string, which is the first one visited.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .evaluation import TOL, evaluate
from .model import DEPOT, Evaluation, Instance, MaxSuccess, MinCost, ObjectiveSpec, Solution

SEPARATOR = 0
DEFAULT_MAX_SYMBOLS = 13


class EncodingError(ValueError):
    pass


class EnumerationRefused(RuntimeError):
    """The instance is too large to enumerate; use the annealing solver."""


@dataclass(frozen=True)
class ExactResult:
    solution: Solution | None
    evaluation: Evaluation | None
    spec: ObjectiveSpec
    leaves: int
    elapsed: float

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def decode(symbols: Sequence, n_customers: int | None = None, fleet_size: int | None = None) -> Solution:
    """Split a solution string at its separators (``0`` or ``"*"``)."""
    syms = [SEPARATOR if s == "*" else int(s) for s in symbols]
    customers = sorted(s for s in syms if s != SEPARATOR)
    n = len(customers) if n_customers is None else n_customers
    if customers != list(range(1, n + 1)):
        raise EncodingError(f"string must contain customers 1..{n} exactly once: {list(symbols)}")
    n_sep = len(syms) - len(customers)
    if fleet_size is not None and n_sep != fleet_size - 1:
        raise EncodingError(f"expected {fleet_size - 1} separators, found {n_sep}")
    routes: list[list[int]] = [[]]
    for s in syms:
        if s == SEPARATOR:
            routes.append([])
        else:
            routes[-1].append(s)
    return Solution(routes)


def encode(solution: Solution, fleet_size: int | None = None) -> tuple[int, ...]:
    """Inverse of :func:`decode`; pads with empty routes up to ``fleet_size``."""
    routes = list(solution.routes)
    k = len(routes) if fleet_size is None else fleet_size
    if len(routes) > k:
        routes = [r for r in routes if r]
        if len(routes) > k:
            raise EncodingError(f"{len(routes)} routes exceed fleet size {k}")
    routes += [()] * (k - len(routes))
    out: list[int] = []
    for i, r in enumerate(routes):
        if i:
            out.append(SEPARATOR)
        out.extend(r)
    return tuple(out)


def solve_exact(
    instance: Instance, spec: ObjectiveSpec, max_symbols: int = DEFAULT_MAX_SYMBOLS
) -> ExactResult:
    n = instance.n_customers
    k = instance.fleet_size
    n_symbols = n + k - 1
    if n_symbols > max_symbols:
        raise EnumerationRefused(
            f"{n} customers and {k} vehicles give {n_symbols}-symbol strings, above the "
            f"enumeration limit of {max_symbols}; use the simulated-annealing solver"
        )
    t0 = time.perf_counter()
    c = instance.cost_rows
    p = instance.success_rows
    d = instance.demand_list
    cap = instance.capacity
    min_cost = isinstance(spec, MinCost)
    alpha = spec.alpha if min_cost else 0.0
    beta = spec.beta if isinstance(spec, MaxSuccess) else float("inf")
    # upper bound on the success rate any not-yet-placed customer can reach
    p_max = max((p[i][j] for i in range(n + 1) for j in range(1, n + 1) if i != j), default=1.0)
    p_depot = max(p[DEPOT][1:], default=1.0)

    best: dict = {"key": None, "string": None}
    leaves = 0
    string: list[int] = []
    remaining = sorted(instance.customers)

    def better(cost: float, succ: float) -> bool:
        key = best["key"]
        if key is None:
            return True
        bcost, bsucc = key
        if min_cost:
            if cost < bcost - TOL:
                return True
            return abs(cost - bcost) <= TOL and succ > bsucc + TOL
        if succ > bsucc + TOL:
            return True
        return abs(succ - bsucc) <= TOL and cost < bcost - TOL

    def dfs(prev: int, phi: float, load: float, cost: float, succ: float, short: float, seps: int):
        nonlocal leaves
        if not remaining and seps == 0:
            leaves += 1
            total = cost + c[prev][DEPOT] if prev != DEPOT else cost
            if short > TOL or total - beta > TOL:
                return
            if better(total, succ):
                best["key"] = (total, succ)
                best["string"] = tuple(string)
            return

        key = best["key"]
        if key is not None:
            if min_cost and cost > key[0] + TOL:
                return
            if not min_cost:
                reach = max(phi * p_max, p_depot) if seps else phi * p_max
                if succ + len(remaining) * reach < key[1] - TOL:
                    return

        if seps:
            string.append(SEPARATOR)
            dfs(DEPOT, 1.0, 0.0, cost + c[prev][DEPOT] if prev != DEPOT else cost, succ, short, seps - 1)
            string.pop()

        for idx in range(len(remaining)):
            node = remaining[idx]
            new_load = load + d[node]
            if new_load - cap > TOL:
                continue
            new_phi = phi * p[prev][node]
            gap = alpha - new_phi
            if gap > TOL:
                continue
            new_cost = cost + c[prev][node]
            if new_cost - beta > TOL:
                continue
            del remaining[idx]
            string.append(node)
            dfs(node, new_phi, new_load, new_cost, succ + new_phi, short + max(gap, 0.0), seps)
            string.pop()
            remaining.insert(idx, node)

    dfs(DEPOT, 1.0, 0.0, 0.0, 0.0, 0.0, k - 1)
    elapsed = time.perf_counter() - t0

    if best["string"] is None:
        return ExactResult(None, None, spec, leaves, elapsed)
    solution = decode(best["string"], n, k)
    return ExactResult(solution, evaluate(instance, solution, spec), spec, leaves, elapsed)
