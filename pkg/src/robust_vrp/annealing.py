"""Simulated annealing over vehicle routes with penalized constraints.

The chain starts from the best of ``init_samples`` random solutions, with
the initial temperature set from the spread of their objectives. Each move
is one of shift, exchange and 2-opt, picked uniformly. Worse candidates are
accepted with probability ``exp(-delta / T)``, and the temperature is
multiplied by ``delta`` after every block of ``inner_iterations`` moves.
Constraint violations are priced with a big-M penalty, so the walk may pass
through infeasible solutions.

The chain itself runs in a compiled kernel (``_kernel``). The Python move
functions below implement the same operators on ``Solution`` objects for
callers that want single moves. The kernel draws from numba's MT19937,
seeded with the 64-bit config seed folded to 32 bits by ``fold_seed``.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import _kernel
from .evaluation import PenaltyConfig, evaluate, scalar_objective
from .model import Evaluation, Instance, MaxSuccess, MinCost, ObjectiveSpec, Solution

RNG_ALGORITHM = "numba-mt19937-fold32"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SaConfig:
    delta: float = 0.92
    outer_iterations: int = 300
    inner_iterations: int = 50
    init_samples: int = 50
    seed: int = 0
    penalty: PenaltyConfig | None = None  # None: PenaltyConfig.for_instance
    # when set, delta is replaced by (final_temperature / T0) ** (1 / outer_iterations)
    final_temperature: float | None = None

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ConfigError(f"delta must lie in (0, 1), got {self.delta!r}")
        for name in ("outer_iterations", "inner_iterations", "init_samples"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.final_temperature is not None and not self.final_temperature > 0:
            raise ConfigError(f"final_temperature must be positive, got {self.final_temperature!r}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["penalty"] = None if self.penalty is None else self.penalty.big_m
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SaConfig":
        data = dict(data)
        unknown = set(data) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise ConfigError(f"unknown SA config keys: {sorted(unknown)}")
        penalty = data.pop("penalty", None)
        if penalty is not None and not isinstance(penalty, PenaltyConfig):
            penalty = PenaltyConfig(float(penalty))
        return cls(penalty=penalty, **data)


@dataclass
class SaResult:
    best_solution: Solution | None
    best_eval: Evaluation | None
    feasible_found: bool
    best_objective: float
    objective_trace: list[tuple[int, float]]
    temperature_trace: list[float]
    initial_temperature: float
    elapsed: float
    seed: int
    config: SaConfig
    rng_algorithm: str = RNG_ALGORITHM
    cooling: float = 0.0
    accepted: int = 0
    moves: int = 0
    extra: dict = field(default_factory=dict)


def initial_temperature(objectives: Sequence[float]) -> float:
    """``f_min + 0.1 * (f_max - f_min)`` over sampled objective values."""
    if len(objectives) == 0:
        raise ConfigError("need at least one sampled objective to set the temperature")
    f_min, f_max = min(objectives), max(objectives)
    return f_min + 0.1 * (f_max - f_min)


def _positive_temperature(objectives: Sequence[float]) -> float:
    t0 = initial_temperature(objectives)
    if t0 > 0:
        return t0
    span = 0.1 * (max(objectives) - min(objectives))
    return span if span > 0 else 1.0


def metropolis_accept(delta: float, temperature: float, rng: random.Random) -> bool:
    if delta <= 0:
        return True
    return rng.random() < math.exp(-delta / temperature)


# --- moves ----------------------------------------------------------------
# Primitives take routes as a list of lists and return {route index: new
# route} for the routes they change; they never mutate their input.


def _locate(routes: Sequence[Sequence[int]], flat_index: int) -> tuple[int, int]:
    for r, route in enumerate(routes):
        if flat_index < len(route):
            return r, flat_index
        flat_index -= len(route)
    raise IndexError("flat index beyond the last customer")


def relocate(routes, src: tuple[int, int], dst_route: int, dst_pos: int) -> dict[int, list[int]]:
    """Move the customer at ``src`` to position ``dst_pos`` of ``dst_route``.

    ``dst_pos`` indexes the destination route after the customer has been
    removed.
    """
    r0, i0 = src
    node = routes[r0][i0]
    out = {r0: routes[r0][:i0] + routes[r0][i0 + 1 :]}
    target = out.get(dst_route, list(routes[dst_route]))
    out[dst_route] = target[:dst_pos] + [node] + target[dst_pos:]
    return out


def swap(routes, a: tuple[int, int], b: tuple[int, int]) -> dict[int, list[int]]:
    (ra, ia), (rb, ib) = a, b
    out = {ra: list(routes[ra])}
    out.setdefault(rb, list(routes[rb]))
    out[ra][ia], out[rb][ib] = routes[rb][ib], routes[ra][ia]
    return out


def reverse_segment(routes, r: int, i: int, j: int) -> dict[int, list[int]]:
    """Reverse positions ``i..j`` (inclusive) of route ``r``."""
    route = routes[r]
    return {r: route[:i] + route[i : j + 1][::-1] + route[j + 1 :]}


def propose_shift(routes, rng: random.Random) -> dict[int, list[int]]:
    n = sum(len(r) for r in routes)
    k = len(routes)
    slots = n - 1 + k  # insertion slots once the customer is removed
    if n == 0 or slots < 2:
        return {}
    r0, i0 = _locate(routes, rng.randrange(n))
    home = sum(len(routes[r]) for r in range(r0)) + r0 + i0
    slot = rng.randrange(slots - 1)
    if slot >= home:
        slot += 1
    for r, route in enumerate(routes):
        width = len(route) + (0 if r == r0 else 1)
        if slot < width:
            return relocate(routes, (r0, i0), r, slot)
        slot -= width
    raise AssertionError("slot out of range")


def propose_exchange(routes, rng: random.Random) -> dict[int, list[int]]:
    n = sum(len(r) for r in routes)
    if n < 2:
        return {}
    a, b = rng.sample(range(n), 2)
    return swap(routes, _locate(routes, a), _locate(routes, b))


def propose_two_opt(routes, rng: random.Random) -> dict[int, list[int]]:
    long_routes = [r for r, route in enumerate(routes) if len(route) >= 2]
    if not long_routes:
        return {}
    r = rng.choice(long_routes)
    i, j = sorted(rng.sample(range(len(routes[r])), 2))
    return reverse_segment(routes, r, i, j)


def _apply(solution: Solution, changes: dict[int, list[int]]) -> Solution:
    routes = [list(r) for r in solution.routes]
    for r, new in changes.items():
        routes[r] = new
    return Solution(routes)


def shift_move(solution: Solution, rng: random.Random) -> Solution:
    return _apply(solution, propose_shift([list(r) for r in solution.routes], rng))


def exchange_move(solution: Solution, rng: random.Random) -> Solution:
    return _apply(solution, propose_exchange([list(r) for r in solution.routes], rng))


def two_opt_move(solution: Solution, rng: random.Random) -> Solution:
    return _apply(solution, propose_two_opt([list(r) for r in solution.routes], rng))


MOVES = (propose_shift, propose_exchange, propose_two_opt)


def random_solution(instance: Instance, rng: random.Random) -> Solution:
    """Uniformly shuffled customers cut into ``fleet_size`` routes."""
    symbols = list(instance.customers) + [0] * (instance.fleet_size - 1)
    rng.shuffle(symbols)
    routes: list[list[int]] = [[]]
    for s in symbols:
        if s == 0:
            routes.append([])
        else:
            routes[-1].append(s)
    return Solution(routes)


# --- solver ---------------------------------------------------------------


def fold_seed(seed: int) -> int:
    """The 32-bit MT19937 seed used for a 64-bit config seed."""
    return (seed ^ (seed >> 32)) & 0xFFFFFFFF


def solve_sa(instance: Instance, spec: ObjectiveSpec, config: SaConfig | None = None) -> SaResult:
    config = config or SaConfig()
    penalty = config.penalty or PenaltyConfig.for_instance(instance)
    min_cost = isinstance(spec, MinCost)
    t_start = time.perf_counter()
    out = _kernel.anneal(
        np.ascontiguousarray(instance.cost, dtype=float),
        np.ascontiguousarray(instance.success, dtype=float),
        np.ascontiguousarray(instance.demand, dtype=float),
        float(instance.capacity),
        instance.fleet_size,
        min_cost,
        spec.alpha if min_cost else 0.0,
        spec.beta if isinstance(spec, MaxSuccess) else math.inf,
        float(penalty.big_m),
        float(config.delta),
        int(config.outer_iterations),
        int(config.inner_iterations),
        int(config.init_samples),
        float(config.final_temperature or 0.0),
        fold_seed(config.seed),
    )
    routes, lengths, trace_it, trace_f, current_f, temps, sample_f, t0, cooling, accepted, moves = out
    elapsed = time.perf_counter() - t_start

    best = Solution([routes[r, : lengths[r]].tolist() for r in range(instance.fleet_size)])
    ev = evaluate(instance, best, spec)
    return SaResult(
        best_solution=best,
        best_eval=ev,
        feasible_found=ev.feasible,
        best_objective=scalar_objective(ev, spec, penalty),
        objective_trace=list(zip(trace_it.tolist(), trace_f.tolist())),
        temperature_trace=temps.tolist(),
        initial_temperature=float(t0),
        elapsed=elapsed,
        seed=config.seed,
        config=config,
        cooling=float(cooling),
        accepted=int(accepted),
        moves=int(moves),
        extra={"sample_objectives": sample_f.tolist(), "current_trace": current_f.tolist()},
    )


def solve_sa_multistart(
    instance: Instance, spec: ObjectiveSpec, config: SaConfig | None = None, seeds: Sequence[int] = range(5)
) -> SaResult:
    """Best of independent runs, one per seed (feasible first, then objective)."""
    config = config or SaConfig()
    results = [solve_sa(instance, spec, _with_seed(config, s)) for s in seeds]
    return min(results, key=lambda r: (not r.feasible_found, r.best_objective))


def _with_seed(config: SaConfig, seed: int) -> SaConfig:
    return SaConfig(**{**config.__dict__, "seed": int(seed)})
