"""Machine-readable reports (JSON), tables (CSV) and text summaries.

JSON layout (``SCHEMA_VERSION``): top-level keys are sorted; floats are
written with ``repr`` precision and non-finite values become ``null``.
Fields are only ever added, never renumbered or renamed.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .config import DESIGN_VARIABLES, BenchmarkConfig, ScenarioConfig
from .fom import evtol_trip_values
from .optimize import OptimizationResult, StartRecord
from .pipeline import FullReport, as_plain, report_summary

__all__ = [
    "SCHEMA_VERSION",
    "ReportError",
    "percent_shares",
    "report_dict",
    "optimization_dict",
    "dumps",
    "load_report",
    "evtol_values_from_report",
    "text_summary",
    "constraints_csv",
    "starts_csv",
    "sweep_csv",
    "BENCHMARK_ROWS",
    "benchmark_values",
    "benchmark_rows",
    "benchmark_csv",
    "benchmark_text",
]

SCHEMA_VERSION = 1

STARTS_COLUMNS = (("index",) + tuple(f"z_sample_{n}" for n in DESIGN_VARIABLES)
                  + tuple(f"z0_{n}" for n in DESIGN_VARIABLES) + DESIGN_VARIABLES
                  + ("objective", "feasible", "max_violation", "iterations", "nfev",
                     "status", "tag", "message"))


class ReportError(ValueError):
    """A report file cannot be read or was not written by this package."""


def _finite(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def _pct(parts: dict[str, float]) -> dict[str, float]:
    total = sum(parts.values())
    if total <= 0:
        return {k: 0.0 for k in parts}
    return {k: 100.0 * v / total for k, v in parts.items()}


def percent_shares(report: FullReport) -> dict[str, dict[str, float]]:
    """Percentage decompositions; each sums to 100."""
    m, mi, g = report.mass, report.mission, report.gwp
    return {
        "mtom": _pct({"payload": m.m_payload, "empty": m.m_empty, "battery": m.m_battery}),
        "empty": _pct({"wing": m.m_wing, "fuselage": m.m_fuselage, "gear": m.m_gear,
                       "rotor": m.m_rotor, "motor": m.m_motor, "systems": m.m_systems,
                       "furnish": m.m_furnish, "crew": m.m_crew}),
        "trip_energy": _pct({p.phase: p.energy for p in mi.phases}),
        "toc": report.costs.shares(),
        "gwp": _pct({"energy": g.gwp_energy_cycle, "battery": g.gwp_battery_cycle}),
    }


def report_dict(report: FullReport, cfg: ScenarioConfig) -> dict:
    mi = report.mission
    fom_inputs = evtol_trip_values(report.costs.toc, report.gwp.gwp_cycle_total,
                                   mi.flight_time, cfg)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "evaluation",
        "fingerprint": report.fingerprint,
        "label": cfg.fom.evtol_label,
        "design": report.design.to_dict(),
        "feasible": report.feasible,
        "constraints": dict(report.constraints),
        "mass": as_plain(report.mass),
        "aero": as_plain(mi.aero),
        "phases": [as_plain(p) | {"energy": p.energy} for p in mi.phases],
        "energy": as_plain(mi.budget),
        "flight_time": mi.flight_time,
        "acoustics": as_plain(report.acoustics),
        "battery": as_plain(report.battery),
        "utilization": as_plain(report.utilization),
        "costs": report.costs.to_dict(),
        "profit": as_plain(report.profit),
        "gwp": report.gwp.to_dict(),
        "fom": as_plain(report.fom),
        "fom_inputs": {"cost": fom_inputs[0], "co2": fom_inputs[1], "time": fom_inputs[2]},
        "operations": {"load_factor": cfg.operations.load_factor,
                       "seats": cfg.operations.seats,
                       "trip_distance_km": cfg.mission.trip_distance / 1000.0},
        "shares": percent_shares(report),
        "summary": report_summary(report),
        "warnings": list(report.warnings),
    }


def _start_dict(r: StartRecord) -> dict:
    return as_plain(r)


def optimization_dict(result: OptimizationResult, cfg: ScenarioConfig) -> dict:
    out = report_dict(result.report, cfg)
    out["kind"] = "optimization"
    out["optimization"] = {
        "objective_name": result.problem.objective,
        "objective": result.objective,
        "problem": as_plain(result.problem),
        "feasible": result.feasible,
        "best_start": result.best_start,
        "iterations": result.iterations,
        "nfev": result.nfev,
        "status": result.status,
        "message": result.message,
        "active_constraints": list(result.active_constraints),
        "active_bounds": list(result.active_bounds),
        "projected_gradient_norm": result.projected_gradient_norm,
        "starts": [_start_dict(r) for r in result.starts],
    }
    return out


def dumps(data: dict) -> str:
    """Deterministic JSON text."""
    return json.dumps(_finite(as_plain(data)), sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_report(path: str | Path) -> dict:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ReportError(f"cannot read report {path}: {exc}") from exc
    if not isinstance(data, dict) or "schema_version" not in data:
        raise ReportError(f"{path}: not a report from this package")
    if data["schema_version"] > SCHEMA_VERSION:
        raise ReportError(f"{path}: schema version {data['schema_version']} is newer "
                          f"than supported ({SCHEMA_VERSION})")
    return data


def evtol_values_from_report(data: dict) -> tuple[float, float, float]:
    f = data["fom_inputs"]
    return f["cost"], f["co2"], f["time"]


def text_summary(report: FullReport) -> str:
    s = report_summary(report)
    d = report.design
    lines = [
        f"fingerprint           {report.fingerprint}",
        "design                " + "  ".join(f"{k}={v:.4g}" for k, v in d.to_dict().items()),
        f"feasible              {'yes' if report.feasible else 'no'}",
        "",
        f"MTOM                  {s['mtom']:9.1f} kg",
        f"  empty / battery     {s['m_empty']:9.1f} / {s['m_battery']:.1f} kg",
        f"trip energy           {s['e_trip']:9.2f} kWh   (design {s['e_design']:.1f} kWh, "
        f"DoD {s['dod']:.3f})",
        f"cruise speed          {s['v_cruise']:9.2f} m/s  (L/D {s['lift_to_drag']:.2f})",
        f"hover / cruise power  {s['p_hover']:9.1f} / {s['p_cruise']:.1f} kW",
        f"hover SPL             {s['spl_hover']:9.2f} dB(A)",
        f"cycle life            {s['n_cycles']:9.0f}   turnaround {s['t_turnaround_min']:.1f} min",
        f"flights per year      {s['fc_a']:9.0f}",
        f"TOC per flight        {s['toc']:9.2f} EUR",
        f"annual profit         {s['profit_annual']:9.0f} EUR",
        f"annual GWP            {s['gwp_annual']:9.2f} tCO2e",
        f"FoM                   {s['fom']:9.3f}",
        "",
        "constraints (>= 0 feasible)",
    ]
    lines += [f"  {k:22s}{v:12.4g}" for k, v in report.constraints.items()]
    if report.warnings:
        lines += ["", "warnings"] + [f"  {w}" for w in report.warnings]
    return "\n".join(lines) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def constraints_csv(report: FullReport) -> str:
    return _csv(["constraint", "value", "satisfied"],
                [[k, repr(v), int(v >= 0)] for k, v in report.constraints.items()])


def starts_csv(starts) -> str:
    rows = []
    for r in starts:
        rows.append([r.index, *map(repr, r.z_sample), *map(repr, r.z0), *map(repr, r.z),
                     repr(r.objective), int(r.feasible), repr(r.max_violation), r.iterations,
                     r.nfev, r.status, r.tag, r.message])
    return _csv(STARTS_COLUMNS, rows)


def sweep_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    header: list[str] = []
    for r in rows:
        header += [k for k in r if k not in header]
    fmt = lambda v: repr(v) if isinstance(v, float) else ("" if v is None else v)
    return _csv(header, [[fmt(r.get(k)) for k in header] for r in rows])


# (key, label, unit, requirement field)
BENCHMARK_ROWS = (
    ("mtom", "MTOM", "kg", "mtom"),
    ("specific_energy", "Battery specific energy", "Wh/kg", "specific_energy"),
    ("cycle_life", "Battery cycle life", "cycles", "cycle_life"),
    ("capacity", "Battery capacity", "kWh", "capacity"),
    ("cruise_speed", "Cruise speed", "km/h", "cruise_speed_kmh"),
    ("motion_efficiency", "Motion efficiency at cruise", "km/kWh", "motion_efficiency"),
    ("hover_power", "Hover power", "kW", "hover_power"),
    ("cruise_power", "Cruise power", "kW", "cruise_power"),
    ("lift_to_drag", "Cruise L/D", "-", "lift_to_drag"),
    ("cost_per_pax_km", "Cost per pax-km", "EUR", "cost_per_pax_km"),
    ("cost_per_pax_min", "Cost per pax-min", "EUR", "cost_per_pax_min"),
    ("pooled_trip_cost", "Pooled trip cost per person", "EUR", "pooled_trip_cost"),
    ("utilization_hours", "Utilization", "h/yr", "utilization_hours"),
    ("load_factor", "Load factor", "-", "load_factor"),
    ("piloting_share", "Piloting share of DOC", "-", "piloting_share"),
    ("maintenance_share", "Maintenance share of DOC", "-", "maintenance_share"),
    ("battery_share", "Battery share of DOC", "-", "battery_share"),
    ("energy_share", "Energy share of DOC", "-", "energy_share"),
    ("ownership_share", "Ownership share of DOC", "-", "ownership_share"),
)


def benchmark_values(data: dict) -> dict[str, float]:
    """Benchmark quantities from a report dictionary."""
    s, c, op = data["summary"], data["costs"], data["operations"]
    seats, lf, dist = op["seats"], op["load_factor"], op["trip_distance_km"]
    doc = c["doc"]
    return {
        "mtom": s["mtom"],
        "specific_energy": data["design"]["rho_bat"],
        "cycle_life": s["n_cycles"],
        "capacity": s["e_design"],
        "cruise_speed": s["v_cruise"] * 3.6,
        "motion_efficiency": dist / s["e_trip"],
        "hover_power": s["p_hover"],
        "cruise_power": s["p_cruise"],
        "lift_to_drag": s["lift_to_drag"],
        "cost_per_pax_km": c["toc"] / (seats * dist),
        "cost_per_pax_min": c["toc"] / (seats * s["t_flight_min"]),
        "pooled_trip_cost": c["toc"] / (seats * lf),
        "utilization_hours": s["flight_hours_year"],
        "load_factor": lf,
        "piloting_share": c["c_c"] / doc,
        "maintenance_share": (c["c_wrm"] + c["c_mb"]) / doc,
        "battery_share": c["c_mb"] / doc,
        "energy_share": c["c_e"] / doc,
        "ownership_share": c["coo"] / doc,
    }


def benchmark_rows(reports: list[tuple[str, dict]], req: BenchmarkConfig) -> tuple[list, list]:
    """Header and rows: metric, unit, requirement, one column per report."""
    header = ["metric", "unit", req.label] + [name for name, _ in reports]
    vals = [benchmark_values(d) for _, d in reports]
    rows = [[label, unit, getattr(req, field)] + [v[key] for v in vals]
            for key, label, unit, field in BENCHMARK_ROWS] if reports else []
    return header, rows


def benchmark_csv(reports, req: BenchmarkConfig) -> str:
    header, rows = benchmark_rows(reports, req)
    return _csv(header, [[r[0], r[1]] + [f"{v:.6g}" for v in r[2:]] for r in rows])


def benchmark_text(reports, req: BenchmarkConfig) -> str:
    header, rows = benchmark_rows(reports, req)
    w0 = max([len(header[0])] + [len(r[0]) for r in rows])
    cols = [f"{h:>14s}" for h in header[2:]]
    lines = [f"{header[0]:{w0}s}  {header[1]:8s}" + "".join(cols)]
    for r in rows:
        lines.append(f"{r[0]:{w0}s}  {r[1]:8s}" + "".join(f"{v:14.4g}" for v in r[2:]))
    return "\n".join(lines) + "\n"
