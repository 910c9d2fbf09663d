"""Command-line front end.

Subcommands: evaluate, optimize, sweep, compare, benchmark.
Exit codes: 0 feasible / success, 1 error, 2 evaluable but infeasible,
3 optimizer found no feasible start.

``--scenario`` names a YAML file; a bare name is also looked up in the
directory given by ``EVTOL_MDO_SCENARIO_DIR``, and when the flag is absent
``$EVTOL_MDO_SCENARIO_DIR/scenario.yaml`` is used if it exists.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np
import yaml

from .config import DESIGN_VARIABLES, ConfigError, ScenarioConfig, load_scenario
from .design import BoundsError, DesignVector
from .fom import ModesCsvError, default_modes, fom_table, load_modes
from .optimize import OptimizationFailure, OptimizationProblem, optimize, sweep
from .pipeline import OBJECTIVES, EvaluationError, evaluate
from . import report as rp

__all__ = ["main", "cmd_evaluate", "cmd_optimize", "cmd_sweep", "cmd_compare",
           "cmd_benchmark", "SCENARIO_DIR_ENV", "EXIT_OK", "EXIT_ERROR",
           "EXIT_INFEASIBLE", "EXIT_OPTIMIZER_FAILURE"]

SCENARIO_DIR_ENV = "EVTOL_MDO_SCENARIO_DIR"
DEFAULT_SCENARIO_NAME = "scenario.yaml"

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OPTIMIZER_FAILURE = 0, 1, 2, 3


class CliError(RuntimeError):
    pass


def resolve_scenario(name: str | None) -> Path | None:
    env = os.environ.get(SCENARIO_DIR_ENV)
    if name is None:
        if env and (Path(env) / DEFAULT_SCENARIO_NAME).is_file():
            return Path(env) / DEFAULT_SCENARIO_NAME
        return None
    p = Path(name)
    if p.is_file() or p.is_absolute() or not env:
        return p
    for cand in (Path(env) / name, Path(env) / f"{name}.yaml"):
        if cand.is_file():
            return cand
    return p


def _scenario(args) -> ScenarioConfig:
    return load_scenario(resolve_scenario(args.scenario))


def load_design(path: str | Path) -> DesignVector:
    """Read a YAML/JSON mapping of the six design variables (optionally
    nested under ``design``)."""
    try:
        data = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise CliError(f"cannot read design file {path}: {exc}") from exc
    if isinstance(data, dict) and isinstance(data.get("design"), dict):
        data = data["design"]
    if not isinstance(data, dict):
        raise CliError(f"{path}: expected a mapping of {', '.join(DESIGN_VARIABLES)}")
    try:
        return DesignVector.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise CliError(f"{path}: {exc}") from exc


def _weights(text: str | None):
    if text is None:
        return None
    try:
        w = tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise CliError(f"--weights: {exc}") from exc
    if len(w) != 3:
        raise CliError("--weights needs three comma-separated values (cost, CO2e, time)")
    return w


def _write(out: Path | None, name: str, text: str) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


def _out(args) -> Path | None:
    return Path(args.out) if args.out else None


def cmd_evaluate(args) -> int:
    cfg = _scenario(args)
    rep = evaluate(load_design(args.design), cfg)
    out = _out(args)
    _write(out, "report.json", rp.dumps(rp.report_dict(rep, cfg)))
    _write(out, "report.txt", rp.text_summary(rep))
    _write(out, "constraints.csv", rp.constraints_csv(rep))
    if not args.quiet:
        sys.stdout.write(rp.text_summary(rep))
    return EXIT_OK if rep.feasible else EXIT_INFEASIBLE


def cmd_optimize(args) -> int:
    cfg = _scenario(args)
    problem = OptimizationProblem.from_config(args.objective, cfg, starts=args.starts,
                                              seed=args.seed)
    out = _out(args)
    try:
        res = optimize(problem, cfg, workers=args.workers)
    except OptimizationFailure as exc:
        _write(out, "starts.csv", rp.starts_csv(exc.starts))
        print(f"optimizer failure: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZER_FAILURE
    _write(out, "result.json", rp.dumps(rp.optimization_dict(res, cfg)))
    _write(out, "report.txt", rp.text_summary(res.report))
    _write(out, "starts.csv", rp.starts_csv(res.starts))
    if not args.quiet:
        print(f"{res.problem.objective}: {res.objective:.6g} (start {res.best_start}, "
              f"active {', '.join(res.active_constraints + res.active_bounds) or 'none'})")
        sys.stdout.write(rp.text_summary(res.report))
    return EXIT_OK if res.feasible else EXIT_INFEASIBLE


def _grid(text: str) -> np.ndarray:
    """``lo:hi:n`` or a comma-separated list."""
    try:
        if ":" in text:
            lo, hi, n = text.split(":")
            return np.linspace(float(lo), float(hi), int(n))
        return np.array([float(t) for t in text.split(",")])
    except ValueError as exc:
        raise CliError(f"--values: {exc}") from exc


def cmd_sweep(args) -> int:
    cfg = _scenario(args)
    rows = sweep(args.variable, _grid(args.values), load_design(args.design), cfg)
    text = rp.sweep_csv(rows)
    _write(_out(args), "sweep.csv", text)
    if not args.quiet:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_compare(args) -> int:
    cfg = _scenario(args)
    fc = cfg.fom
    weights = _weights(args.weights) or fc.weights
    distance = args.distance_km if args.distance_km is not None else fc.distance_km
    csv_path = args.modes_csv or fc.modes_csv
    modes = load_modes(csv_path) if csv_path else default_modes()
    extra = {}
    for path in args.reports:
        data = rp.load_report(path)
        label = f"{data.get('label', 'eVTOL')} [{Path(path).stem}]"
        extra[label] = rp.evtol_values_from_report(data)
    table = fom_table(modes, distance, weights, extra=extra)
    text = table.to_csv()
    _write(_out(args), "fom.csv", text)
    lines = [f"{'rank':>4s}  {'mode':40s}{'cost':>8s}{'CO2e':>8s}{'time':>8s}{'FoM':>8s}"]
    lines += [f"{r.rank:4d}  {r.label:40s}{r.r_cost:8.3f}{r.r_co2:8.3f}{r.r_time:8.3f}"
              f"{r.fom:8.3f}" for r in table.rows]
    txt = "\n".join(lines) + "\n"
    _write(_out(args), "fom.txt", txt)
    if not args.quiet:
        sys.stdout.write(txt)
    return EXIT_OK


def cmd_benchmark(args) -> int:
    cfg = _scenario(args)
    reports = [(Path(p).stem if Path(p).name not in ("report.json", "result.json")
                else Path(p).parent.name or Path(p).stem, rp.load_report(p))
               for p in args.reports]
    _write(_out(args), "benchmark.csv", rp.benchmark_csv(reports, cfg.benchmark))
    txt = rp.benchmark_text(reports, cfg.benchmark)
    _write(_out(args), "benchmark.txt", txt)
    if not args.quiet:
        sys.stdout.write(txt)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evtol-mdo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--scenario", help="scenario YAML (defaults built in)")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--quiet", action="store_true", help="no stdout summary")

    sp = sub.add_parser("evaluate", help="evaluate one design")
    common(sp)
    sp.add_argument("--design", required=True, help="design YAML/JSON")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("optimize", help="multi-start optimization")
    common(sp)
    sp.add_argument("--objective", required=True, choices=sorted(OBJECTIVES))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--starts", type=int)
    sp.add_argument("--workers", type=int, default=1, help="parallel start processes")
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("sweep", help="one-variable parameter sweep")
    common(sp)
    sp.add_argument("--design", required=True)
    sp.add_argument("--variable", required=True, choices=DESIGN_VARIABLES)
    sp.add_argument("--values", required=True, help="lo:hi:n or v1,v2,...")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("compare", help="cross-mode figure-of-merit table")
    common(sp)
    sp.add_argument("reports", nargs="*", help="report JSON files from evaluate/optimize")
    sp.add_argument("--modes-csv")
    sp.add_argument("--distance-km", type=float)
    sp.add_argument("--weights", help="w_cost,w_co2,w_time")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("benchmark", help="requirement comparison table")
    common(sp)
    sp.add_argument("reports", nargs="*")
    sp.set_defaults(func=cmd_benchmark)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, BoundsError, EvaluationError, ModesCsvError, rp.ReportError,
            CliError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
