import itertools

import pytest

from robust_vrp.evaluation import evaluate
from robust_vrp.exact import decode
from robust_vrp.model import MinCost, reference_instance


@pytest.fixture(scope="session")
def ref():
    return reference_instance()


def canonical(routes):
    """Routes as a set, each oriented so that its smaller end comes first."""
    out = set()
    for r in routes:
        r = tuple(r)
        if r:
            out.add(min(r, r[::-1]))
    return frozenset(out)


def brute_force(instance, spec):
    """Independent oracle: every permutation of customers and separators.

    Returns (objective, evaluation) of the best feasible decoding, or None.
    Objective is cost for MinCost and success for MaxSuccess.
    """
    n, k = instance.n_customers, instance.fleet_size
    symbols = list(range(1, n + 1)) + [0] * (k - 1)
    best = None
    for perm in set(itertools.permutations(symbols)):
        ev = evaluate(instance, decode(perm, n, k), spec)
        if not ev.feasible:
            continue
        z = ev.total_cost if isinstance(spec, MinCost) else ev.total_success
        if best is None or (z < best[0] if isinstance(spec, MinCost) else z > best[0]):
            best = (z, ev)
    return best


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
