"""Benchmark harness: single solves, alpha/beta sweeps, scale runs, CSV output."""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .annealing import SaConfig, SaResult, solve_sa_multistart
from .evaluation import PenaltyConfig, objective_value
from .exact import solve_exact
from .generator import GenSpec, generate
from .model import Evaluation, Instance, MaxSuccess, MinCost, ObjectiveSpec, Solution

# (N, K, beta) rows of the published scale experiment
DEFAULT_SCALE_ROWS = [
    (10, 2, 500.0),
    (20, 2, 700.0),
    (30, 3, 1000.0),
    (40, 3, 1400.0),
    (50, 4, 1900.0),
    (100, 5, 2800.0),
]
REFERENCE_ALPHAS = [0, 20, 50, 80, 82, 85, 87, 90, 92, 92.2, 92.3]
REFERENCE_BETAS = [400, 350, 330, 310, 300, 280, 260, 240, 230, 220, 210]


@dataclass
class RunRecord:
    instance_id: str
    solver: str
    mode: str
    value: float  # alpha in percent, or beta
    objective: float | None
    total_cost: float | None
    total_success: float | None
    feasible: bool
    elapsed: float
    seed: int | None = None
    config: dict = field(default_factory=dict)
    solution: Solution | None = None
    evaluation: Evaluation | None = None


def spec_for(mode: str, value: float) -> ObjectiveSpec:
    """``mode`` is "min-cost" (value = alpha in percent) or "max-success"."""
    if mode == "min-cost":
        return MinCost(value / 100.0)
    if mode == "max-success":
        return MaxSuccess(value)
    raise ValueError(f"unknown mode {mode!r}")


def mode_of(spec: ObjectiveSpec) -> tuple[str, float]:
    if isinstance(spec, MinCost):
        return "min-cost", spec.alpha * 100.0
    return "max-success", spec.beta


def sa_scale_config(instance: Instance, seed: int = 0) -> SaConfig:
    """Longer, colder schedule for generated instances.

    The move budget grows as N squared. The penalty weight is 1e3 times the
    longest arc rather than the 1e6 default: with the larger weight the chain
    freezes as soon as it first meets the alpha floor.
    """
    n = instance.n_customers
    return SaConfig(
        outer_iterations=4000,
        inner_iterations=max(50, 4 * n * n),
        init_samples=50,
        seed=seed,
        penalty=PenaltyConfig.for_instance(instance, scale=1e3),
        final_temperature=1e-3,
    )


def run_solver(
    instance: Instance,
    spec: ObjectiveSpec,
    solver: str,
    sa_config: SaConfig | None = None,
    seeds: Sequence[int] = (0,),
) -> RunRecord:
    mode, value = mode_of(spec)
    if solver == "exact":
        res = solve_exact(instance, spec)
        sol, ev, elapsed, seed, cfg = res.solution, res.evaluation, res.elapsed, None, {}
    elif solver == "sa":
        t0 = time.perf_counter()
        sa: SaResult = solve_sa_multistart(instance, spec, sa_config, seeds)
        elapsed = time.perf_counter() - t0
        sol, ev, seed = sa.best_solution, sa.best_eval, sa.seed
        cfg = {**sa.config.to_dict(), "seeds": list(seeds), "rng": sa.rng_algorithm}
        if not sa.feasible_found:
            sol = ev = None
    else:
        raise ValueError(f"unknown solver {solver!r}")
    return RunRecord(
        instance_id=instance.name,
        solver=solver,
        mode=mode,
        value=value,
        objective=None if ev is None else objective_value(ev, spec),
        total_cost=None if ev is None else ev.total_cost,
        total_success=None if ev is None else ev.total_success,
        feasible=ev is not None,
        elapsed=elapsed,
        seed=seed,
        config=cfg,
        solution=sol,
        evaluation=ev,
    )


def gap_percent(z_sa: float | None, z_exact: float | None) -> float | None:
    """``(Z_sa - Z*) / Z* * 100``; 0 when both agree (or both are infeasible)."""
    if z_sa is None and z_exact is None:
        return 0.0
    if z_sa is None or z_exact is None:
        return None
    if math.isclose(z_sa, z_exact, rel_tol=1e-6, abs_tol=1e-9):
        return 0.0
    return (z_sa - z_exact) / z_exact * 100.0


# --- formatting -----------------------------------------------------------


def fmt2(x: float | None) -> str:
    return "infeasible" if x is None else f"{x:.2f}"


def fmt_full(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def routes_text(solution: Solution | None) -> str:
    if solution is None:
        return ""
    return " ".join("-".join(map(str, (0, *r, 0))) for r in solution.routes if r)


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def result_document(instance: Instance, spec: ObjectiveSpec, rec: RunRecord) -> dict:
    """Per-route sequence, load and spare capacity, plus per-node success."""
    mode, value = mode_of(spec)
    doc = {
        "instance": instance.name,
        "solver": rec.solver,
        "mode": mode,
        "alpha_percent" if mode == "min-cost" else "beta": value,
        "status": "feasible" if rec.feasible else "infeasible",
        "elapsed_s": rec.elapsed,
        "seed": rec.seed,
        "config": rec.config,
    }
    if not rec.feasible:
        return doc
    ev = rec.evaluation
    routes = []
    for r, load, cost in zip(rec.solution.routes, ev.route_loads, ev.route_costs):
        if not r:
            continue
        routes.append(
            {
                "route": [0, *r, 0],
                "used_capacity": load,
                "available_capacity": instance.capacity,
                "cost": cost,
                "node_success": {str(c): ev.node_success[c] for c in r},
                "node_success_percent": {str(c): round(100 * ev.node_success[c], 1) for c in r},
            }
        )
    doc.update(
        objective=rec.objective,
        total_cost=ev.total_cost,
        total_success=ev.total_success,
        total_cost_2dp=fmt2(ev.total_cost),
        total_success_2dp=fmt2(ev.total_success),
        routes=routes,
    )
    return doc


def summary_line(rec: RunRecord) -> str:
    label = f"alpha={rec.value:g}%" if rec.mode == "min-cost" else f"beta={rec.value:g}"
    if not rec.feasible:
        return f"{rec.instance_id} {rec.solver} {rec.mode} {label}: infeasible ({rec.elapsed:.2f}s)"
    return (
        f"{rec.instance_id} {rec.solver} {rec.mode} {label}: cost {rec.total_cost:.2f}, "
        f"success {rec.total_success:.2f}, routes {routes_text(rec.solution)} ({rec.elapsed:.2f}s)"
    )


# --- sweeps ---------------------------------------------------------------

SWEEP_HEADER = [
    "mode", "value", "solver", "feasible", "objective", "total_cost", "total_success",
    "time_s", "gap_pct", "seed", "routes",
    "objective_full", "total_cost_full", "total_success_full",
]


def _sweep_job(args):
    instance, mode, value, solver, config, seeds = args
    return run_solver(instance, spec_for(mode, value), solver, config, seeds)


def run_sweep(
    instance: Instance,
    mode: str,
    values: Sequence[float],
    solvers: Sequence[str] = ("exact",),
    sa_config: SaConfig | None = None,
    seeds: Sequence[int] = tuple(range(5)),
    jobs: int = 1,
) -> list[RunRecord]:
    """One record per (value, solver), in input order."""
    tasks = [(instance, mode, v, s, sa_config, tuple(seeds)) for v in values for s in solvers]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_sweep_job, tasks))
    return [_sweep_job(t) for t in tasks]


def sweep_rows(records: Sequence[RunRecord], timing: bool = True) -> list[list[str]]:
    exact = {(r.mode, r.value): r for r in records if r.solver == "exact"}
    rows = []
    for r in records:
        gap = ""
        ref = exact.get((r.mode, r.value))
        if r.solver == "sa" and ref is not None:
            g = gap_percent(r.objective, ref.objective)
            gap = "" if g is None else f"{g:.4f}"
        rows.append(
            [
                r.mode, f"{r.value:g}", r.solver, str(r.feasible).lower(), fmt2(r.objective),
                fmt2(r.total_cost), fmt2(r.total_success),
                f"{r.elapsed:.3f}" if timing else "", gap,
                "" if r.seed is None else str(r.seed), routes_text(r.solution),
                fmt_full(r.objective), fmt_full(r.total_cost), fmt_full(r.total_success),
            ]
        )
    return rows


def sweep_chart_rows(records: Sequence[RunRecord]) -> list[list[str]]:
    """(series, x, y) points: parameter value against objective, per solver."""
    return [[r.solver, f"{r.value:g}", fmt_full(r.objective)] for r in records if r.feasible]


# --- scale runs -----------------------------------------------------------

SCALE_HEADER = [
    "n", "k", "seed", "capacity",
    "c_alpha0", "phi_alpha0", "t_alpha0",
    "alpha_pct", "c_alpha", "phi_alpha", "feasible_alpha", "t_alpha",
    "beta", "c_beta", "phi_beta", "feasible_beta", "t_beta",
    "c_alpha0_full", "phi_alpha0_full", "c_alpha_full", "phi_alpha_full",
    "c_beta_full", "phi_beta_full",
]


@dataclass
class ScaleRow:
    n: int
    k: int
    seed: int
    instance: Instance
    classical: SaResult
    constrained: SaResult
    budgeted: SaResult
    alpha_pct: float
    beta: float


def _scale_job(args) -> ScaleRow:
    n, k, beta, alpha_pct, seed, config, seeds = args
    instance = generate(GenSpec(n, k, seed))
    cfg = config or sa_scale_config(instance)
    runs = [
        solve_sa_multistart(instance, spec, cfg, seeds)
        for spec in (MinCost(0.0), MinCost(alpha_pct / 100.0), MaxSuccess(beta))
    ]
    return ScaleRow(n, k, seed, instance, *runs, alpha_pct=alpha_pct, beta=beta)


def run_scale(
    rows: Sequence[tuple[int, int, float]],
    alpha_pct: float = 75.0,
    seed: int = 0,
    sa_config: SaConfig | None = None,
    seeds: Sequence[int] = (0,),
    jobs: int = 1,
) -> list[ScaleRow]:
    """Classical, alpha-constrained and beta-budgeted SA runs per (N, K, beta)."""
    if not rows:
        raise ValueError("need at least one (N, K, beta) row")
    tasks = [(n, k, beta, alpha_pct, seed, sa_config, tuple(seeds)) for n, k, beta in rows]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_scale_job, tasks))
    return [_scale_job(t) for t in tasks]


def scale_rows(results: Sequence[ScaleRow], timing: bool = True) -> list[list[str]]:
    def t(x):
        return f"{x:.2f}" if timing else ""

    out = []
    for r in results:
        a0, a, b = r.classical.best_eval, r.constrained.best_eval, r.budgeted.best_eval
        out.append(
            [
                r.n, r.k, r.seed, f"{r.instance.capacity:g}",
                fmt2(a0.total_cost), f"{a0.total_success:.4f}", t(r.classical.elapsed),
                f"{r.alpha_pct:g}", fmt2(a.total_cost), f"{a.total_success:.4f}",
                str(r.constrained.feasible_found).lower(), t(r.constrained.elapsed),
                f"{r.beta:g}", fmt2(b.total_cost), f"{b.total_success:.4f}",
                str(r.budgeted.feasible_found).lower(), t(r.budgeted.elapsed),
                fmt_full(a0.total_cost), fmt_full(a0.total_success),
                fmt_full(a.total_cost), fmt_full(a.total_success),
                fmt_full(b.total_cost), fmt_full(b.total_success),
            ]
        )
    return out


def scale_chart_rows(results: Sequence[ScaleRow], quantity: str) -> list[list[str]]:
    """(series, n, y) points; ``quantity`` is "cost" or "success"."""
    attr = {"cost": "total_cost", "success": "total_success"}[quantity]
    out = []
    for series, key in (("stable", "classical"), ("min_cost", "constrained"), ("max_success", "budgeted")):
        for r in results:
            out.append([series, str(r.n), fmt_full(getattr(getattr(r, key).best_eval, attr))])
    return out
