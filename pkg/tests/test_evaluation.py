import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robust_vrp.evaluation import (
    InvalidSolutionError,
    PenaltyConfig,
    evaluate,
    node_success,
    route_cost,
    scalar_objective,
)
from robust_vrp.generator import GenSpec, generate
from robust_vrp.model import Evaluation, Instance, MaxSuccess, MinCost, Solution

UNCONSTRAINED_ROUTES = Solution([[8, 2, 4, 3, 5], [6, 1, 7]])
ALPHA90_ROUTES = Solution([[6, 5, 1, 7], [8, 4, 3, 2]])
BETA220_ROUTES = Solution([[6, 1, 7], [8, 2, 3, 4, 5]])


def test_route_cost_hand_sum(ref):
    hand = math.sqrt(244) + math.sqrt(221) + math.sqrt(260) + 5
    assert route_cost(ref, [6, 1, 7]) == pytest.approx(hand, abs=0.01)
    assert route_cost(ref, [6, 1, 7]) == pytest.approx(51.61, abs=0.01)
    assert route_cost(ref, []) == 0


def test_unconstrained_optimum_cost(ref):
    total = route_cost(ref, [8, 2, 4, 3, 5]) + route_cost(ref, [6, 1, 7])
    assert total == pytest.approx(211.25, abs=0.01)


def test_node_success_alpha90_routes(ref):
    phi = node_success(ref, [6, 5, 1, 7])
    assert list(phi) == [6, 5, 1, 7]
    expected = {6: 0.982, 5: 0.96236, 1: 0.92675, 7: 0.91471}
    for node, value in expected.items():
        assert phi[node] == pytest.approx(value, abs=1e-5)


def test_node_success_beta220_routes(ref):
    phi = node_success(ref, [8, 2, 3, 4, 5])
    expected = {8: 0.972, 2: 0.93506, 3: 0.91823, 4: 0.88701, 5: 0.82758}
    for node, value in expected.items():
        assert phi[node] == pytest.approx(value, abs=1e-5)
    assert node_success(ref, []) == {}


def test_return_arc_excluded(ref):
    phi = node_success(ref, [7])
    assert phi == {7: ref.success[0, 7]}


def test_evaluate_unconstrained(ref):
    ev = evaluate(ref, UNCONSTRAINED_ROUTES, MinCost(0))
    assert ev.total_cost == pytest.approx(211.25, abs=0.01)
    assert ev.total_success == pytest.approx(7.42, abs=0.01)
    assert ev.feasible
    assert ev.route_loads == (179, 129)


def test_evaluate_alpha90(ref):
    ev = evaluate(ref, ALPHA90_ROUTES, MinCost(0.90))
    assert ev.total_cost == pytest.approx(248.55, abs=0.01)
    assert ev.feasible
    assert ev.min_node_success == pytest.approx(0.909, abs=5e-4)
    assert ev.route_loads == (157, 151)


def test_evaluate_beta220(ref):
    ev = evaluate(ref, BETA220_ROUTES, MaxSuccess(220))
    assert ev.total_success == pytest.approx(7.44, abs=0.01)
    assert ev.total_cost == pytest.approx(212.89, abs=0.01)
    assert ev.feasible


def test_violations(ref):
    ev = evaluate(ref, UNCONSTRAINED_ROUTES, MinCost(0.90))
    # shortfall of every customer below 90%
    phis = np.array(list(ev.node_success.values()))
    assert ev.constraint_violation == pytest.approx(np.clip(0.9 - phis, 0, None).sum())
    assert not ev.feasible

    ev = evaluate(ref, BETA220_ROUTES, MaxSuccess(200))
    assert ev.constraint_violation == pytest.approx(12.89)

    one_route = Solution([list(range(1, 9)), []])
    ev = evaluate(ref, one_route, MinCost(0))
    assert ev.capacity_violation == pytest.approx(308 - 180)


def test_partition_violations(ref):
    with pytest.raises(InvalidSolutionError):
        evaluate(ref, Solution([[1, 2, 3], [4, 5, 6, 7]]), MinCost(0))
    with pytest.raises(InvalidSolutionError):
        evaluate(ref, Solution([[1, 2, 3, 4], [4, 5, 6, 7, 8]]), MinCost(0))
    with pytest.raises(InvalidSolutionError, match="fleet"):
        evaluate(ref, Solution([[1, 2, 3], [4, 5], [6, 7, 8]]), MinCost(0))


def test_empty_vehicle_allowed(ref):
    ev = evaluate(ref, Solution([[], list(range(1, 9))]), MinCost(0))
    assert ev.route_costs[0] == 0


def test_scalar_objective_examples():
    ev = Evaluation(211.25, {}, 7.0, 0.0, 0.0)
    assert scalar_objective(ev, MinCost(0), PenaltyConfig(1e6)) == 211.25
    ev = Evaluation(212.89, {}, 7.44, 0.0, 0.0)
    assert scalar_objective(ev, MaxSuccess(220), PenaltyConfig(1e6)) == -7.44
    ev = Evaluation(200.0, {}, 7.0, 5.0, 0.0)
    assert scalar_objective(ev, MinCost(0), PenaltyConfig(1e6)) == 5_000_200


def test_default_penalty_scale(ref):
    assert PenaltyConfig.for_instance(ref).big_m == pytest.approx(1e6 * ref.cost.max())


def _oracle_success(instance, solution):
    total = 0.0
    for r in solution.routes:
        path = [0, *r]
        probs = [instance.success[a, b] for a, b in zip(path, path[1:])]
        total += float(np.cumprod(probs).sum()) if probs else 0.0
    return total


def _random_solution(data, n, k):
    perm = data.draw(st.permutations(list(range(1, n + 1))))
    cuts = sorted(data.draw(st.lists(st.integers(0, n), min_size=k - 1, max_size=k - 1)))
    bounds = [0, *cuts, n]
    return Solution([perm[a:b] for a, b in zip(bounds, bounds[1:])])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 9), st.integers(1, 3), st.data())
def test_properties_on_random_solutions(seed, n, k, data):
    inst = generate(GenSpec(n, k, seed))
    sol = _random_solution(data, n, k)
    ev = evaluate(inst, sol, MinCost(0.9))

    # prefix monotonicity
    for r in sol.routes:
        phis = [ev.node_success[c] for c in r]
        assert all(b <= a for a, b in zip(phis, phis[1:]))

    # independent arc-by-arc recomputation
    assert ev.total_success == pytest.approx(_oracle_success(inst, sol), rel=1e-12)
    assert 0 <= ev.total_success <= n

    # reversal keeps cost, success may move
    rev = Solution([r[::-1] for r in sol.routes])
    assert evaluate(inst, rev, MinCost(0)).total_cost == pytest.approx(ev.total_cost, rel=1e-12)

    # penalty is zero exactly when feasible
    pen = PenaltyConfig.for_instance(inst)
    for spec in (MinCost(0.9), MaxSuccess(ev.total_cost * 0.9), MaxSuccess(ev.total_cost + 1)):
        e = evaluate(inst, sol, spec)
        base = e.total_cost if isinstance(spec, MinCost) else -e.total_success
        f = scalar_objective(e, spec, pen)
        assert e.feasible == (f == base)
        if not e.feasible:
            assert f > base


def test_reversal_can_change_success(ref):
    a = evaluate(ref, Solution([[8, 2, 4, 3, 5], [6, 1, 7]]), MinCost(0))
    b = evaluate(ref, Solution([[5, 3, 4, 2, 8], [6, 1, 7]]), MinCost(0))
    assert a.total_cost == b.total_cost
    assert a.total_success != pytest.approx(b.total_success, abs=1e-3)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(1, 3), st.floats(0, 1), st.data())
def test_certain_network_always_succeeds(n, k, alpha, data):
    inst = Instance(
        coords=np.arange(2 * (n + 1), dtype=float).reshape(n + 1, 2),
        demand=[0] + [1] * n,
        fleet_size=k,
        capacity=n,
        success=np.ones((n + 1, n + 1)),
    )
    ev = evaluate(inst, _random_solution(data, n, k), MinCost(alpha))
    assert ev.total_success == n
    assert ev.feasible
