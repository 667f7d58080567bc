"""Command-line entry point: ``robust-vrp {solve,sweep,scale,generate}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .annealing import ConfigError, SaConfig
from .exact import EnumerationRefused
from .generator import GenSpec, generate
from .model import InstanceError, load_instance, reference_instance, save_instance


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            n, k = item.lower().split("x")
            out.append((int(n), int(k)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected NxK pairs like 10x2,20x2, got {item!r}")
    return out


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--instance", type=Path, help="instance file (JSON)")
    g.add_argument("--reference", action="store_true", help="use the built-in 8-customer example")


def _add_sa_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="JSON file with SA config overrides")
    p.add_argument("--seed", type=int, default=0, help="first SA seed (default 0)")
    p.add_argument("--restarts", type=_positive_int, default=5,
                   help="independent SA runs, seeds seed..seed+restarts-1; best is kept (default 5)")
    for name, typ in (("delta", float), ("outer-iterations", int), ("inner-iterations", int),
                      ("init-samples", int), ("final-temperature", float), ("big-m", float)):
        p.add_argument(f"--{name}", type=typ, default=None)


def _sa_config(args, base: SaConfig | None = None) -> SaConfig | None:
    data = {} if base is None else base.to_dict()
    if args.config is not None:
        data.update(json.loads(args.config.read_text(encoding="utf-8")))
    for key in ("delta", "outer_iterations", "inner_iterations", "init_samples", "final_temperature"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.big_m is not None:
        data["penalty"] = args.big_m
    if not data:
        return None
    data.setdefault("seed", args.seed)
    return SaConfig.from_dict(data)


def _seeds(args) -> list[int]:
    return list(range(args.seed, args.seed + args.restarts))


def _load(args):
    return reference_instance() if args.reference else load_instance(args.instance)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robust-vrp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    _add_instance_args(p)
    solver = p.add_mutually_exclusive_group(required=True)
    solver.add_argument("--exact", dest="solver", action="store_const", const="exact")
    solver.add_argument("--sa", dest="solver", action="store_const", const="sa")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--min-cost", dest="mode", action="store_const", const="min-cost")
    mode.add_argument("--max-success", dest="mode", action="store_const", const="max-success")
    p.add_argument("--alpha", type=float, help="success floor in percent (min-cost)")
    p.add_argument("--beta", type=float, help="cost budget (max-success)")
    p.add_argument("--out", type=Path, default=Path("result.json"), help="result file (JSON)")
    _add_sa_args(p)

    p = sub.add_parser("sweep", help="solve over a list of alpha or beta values")
    _add_instance_args(p)
    p.add_argument("--exact", action="store_true", help="run the exact solver")
    p.add_argument("--sa", action="store_true", help="run simulated annealing")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--min-cost", dest="mode", action="store_const", const="min-cost")
    mode.add_argument("--max-success", dest="mode", action="store_const", const="max-success")
    p.add_argument("--values", type=_float_list,
                   help="alpha percentages or beta budgets (default: the published sweep)")
    p.add_argument("--out", type=Path, default=Path("sweep.csv"))
    p.add_argument("--chart", type=Path, help="chart data file (default: <out>_chart.csv)")
    p.add_argument("--no-timing", action="store_true", help="leave time columns empty")
    p.add_argument("--jobs", type=_positive_int, default=1)
    _add_sa_args(p)

    p = sub.add_parser("scale", help="SA on generated instances: classical, alpha and beta runs")
    p.add_argument("--pairs", type=_pairs, default=None, help="NxK list, e.g. 10x2,20x2")
    p.add_argument("--betas", type=_float_list, default=None, help="one budget per pair")
    p.add_argument("--alpha", type=float, default=75.0, help="success floor in percent")
    p.add_argument("--instance-seed", type=int, default=0, help="generator seed")
    p.add_argument("--out", type=Path, default=Path("scale.csv"))
    p.add_argument("--chart-prefix", type=Path, help="prefix for cost/success chart files")
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--jobs", type=_positive_int, default=1)
    _add_sa_args(p)
    p.set_defaults(restarts=1)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("--n", type=_positive_int, required=True, help="number of customers")
    p.add_argument("--k", type=_positive_int, required=True, help="number of vehicles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)
    return parser


def cmd_solve(args) -> int:
    if args.mode == "min-cost":
        if args.alpha is None:
            raise UsageError("--min-cost needs --alpha")
        value = args.alpha
    else:
        if args.beta is None:
            raise UsageError("--max-success needs --beta")
        value = args.beta
    instance = _load(args)
    spec = bench.spec_for(args.mode, value)
    rec = bench.run_solver(instance, spec, args.solver, _sa_config(args), _seeds(args))
    doc = bench.result_document(instance, spec, rec)
    args.out.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(bench.summary_line(rec))
    return 0


def cmd_sweep(args) -> int:
    solvers = [s for s in ("exact", "sa") if getattr(args, s)]
    if not solvers:
        raise UsageError("choose at least one of --exact / --sa")
    values = args.values
    if values is None:
        values = bench.REFERENCE_ALPHAS if args.mode == "min-cost" else bench.REFERENCE_BETAS
    if not values:
        raise UsageError("--values is empty")
    instance = _load(args)
    records = bench.run_sweep(
        instance, args.mode, values, solvers, _sa_config(args), _seeds(args), jobs=args.jobs
    )
    bench.write_csv(args.out, bench.SWEEP_HEADER, bench.sweep_rows(records, timing=not args.no_timing))
    chart = args.chart or args.out.with_name(args.out.stem + "_chart.csv")
    bench.write_csv(chart, ["series", "x", "y"], bench.sweep_chart_rows(records))
    for rec in records:
        print(bench.summary_line(rec))
    return 0


def cmd_scale(args) -> int:
    if args.pairs is None and args.betas is None:
        rows = bench.DEFAULT_SCALE_ROWS
    else:
        pairs = args.pairs if args.pairs is not None else [(n, k) for n, k, _ in bench.DEFAULT_SCALE_ROWS]
        if not pairs:
            raise UsageError("--pairs is empty")
        if args.betas is None:
            raise UsageError("--betas must list one budget per pair")
        if len(args.betas) != len(pairs):
            raise UsageError(f"{len(pairs)} pairs but {len(args.betas)} betas")
        rows = [(n, k, b) for (n, k), b in zip(pairs, args.betas)]
    for n, k, _ in rows:
        if n < 1 or k < 1:
            raise UsageError(f"invalid pair {n}x{k}")
    results = bench.run_scale(
        rows, args.alpha, args.instance_seed, _sa_config(args), _seeds(args), jobs=args.jobs
    )
    bench.write_csv(args.out, bench.SCALE_HEADER, bench.scale_rows(results, timing=not args.no_timing))
    prefix = args.chart_prefix or args.out.with_suffix("")
    bench.write_csv(f"{prefix}_cost_chart.csv", ["series", "n", "y"], bench.scale_chart_rows(results, "cost"))
    bench.write_csv(
        f"{prefix}_success_chart.csv", ["series", "n", "y"], bench.scale_chart_rows(results, "success")
    )
    for r in results:
        print(
            f"N={r.n} K={r.k}: C0={r.classical.best_eval.total_cost:.2f} "
            f"C_alpha={r.constrained.best_eval.total_cost:.2f} "
            f"(feasible={r.constrained.feasible_found}) "
            f"phi_beta={r.budgeted.best_eval.total_success:.4f} (feasible={r.budgeted.feasible_found})"
        )
    return 0


def cmd_generate(args) -> int:
    save_instance(generate(GenSpec(args.n, args.k, args.seed)), args.out)
    print(f"wrote {args.out}")
    return 0


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "scale": cmd_scale, "generate": cmd_generate}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (InstanceError, ConfigError, EnumerationRefused, OSError, ValueError) as exc:
        print(f"robust-vrp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
