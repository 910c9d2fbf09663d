"""One end-to-end design evaluation and its constraint vector.

Order: MTOM fixed point (mass + aero + mission), acoustics, battery
operations, utilization, cost, GWP and the cross-mode figure of merit.
"""

from __future__ import annotations

import functools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .acoustics import AcousticState, acoustic_state
from .aero import OutOfModelError
from .battery import BatteryOps, battery_ops
from .config import ScenarioConfig, fingerprint
from .design import BoundsError, DesignVector
from .economics import CostBreakdown, Profit, Utilization, cost_breakdown, profit, utilization
from .fom import FomRow, default_modes, evtol_trip_values, fom_table, load_modes
from .gwp import GwpBreakdown, gwp_breakdown
from .mass import MassBreakdown, MtomDivergenceError, solve_mtom
from .mission import InfeasibleMissionError, MissionResult

__all__ = [
    "CONSTRAINT_NAMES",
    "OBJECTIVES",
    "FullReport",
    "EvaluationError",
    "evaluate",
    "constraint_values",
    "constraint_scales",
    "objective_value",
    "geometry_constraints",
    "report_summary",
    "as_plain",
]

CONSTRAINT_NAMES = (
    "g1_span_rotor_fit",
    "g2_vertiport_width",
    "g3_mtom",
    "g4_spl_hover",
    "g5_rpm_hover",
    "g5_rpm_climb",
    "g5_rpm_cruise",
    "g6_speed_climb",
    "g6_speed_cruise",
)

# objective name -> description
OBJECTIVES = {
    "max_profit": "maximize annual operating profit [EUR/yr]",
    "min_toc": "minimize total operating cost per flight [EUR]",
    "min_gwp": "minimize annual operational GWP [tCO2e/yr]",
    "max_fom": "maximize the eVTOL transportation figure of merit",
}

MODEL_ERRORS = (InfeasibleMissionError, MtomDivergenceError, OutOfModelError,
                ZeroDivisionError, OverflowError, ValueError)


class EvaluationError(RuntimeError):
    """A model error raised while evaluating a design; ``tag`` names the stage."""

    def __init__(self, message: str, tag: str):
        super().__init__(message)
        self.tag = tag


@dataclass(frozen=True)
class FullReport:
    design: DesignVector
    mass: MassBreakdown
    mission: MissionResult
    acoustics: AcousticState
    battery: BatteryOps
    utilization: Utilization
    costs: CostBreakdown
    profit: Profit
    gwp: GwpBreakdown
    fom: FomRow
    constraints: dict[str, float]
    fingerprint: str
    warnings: tuple[str, ...] = field(default=())

    @property
    def feasible(self) -> bool:
        return all(v >= 0 for v in self.constraints.values())

    def objective(self, name: str) -> float:
        return objective_value(self, name)


def geometry_constraints(design: DesignVector, cfg: ScenarioConfig) -> tuple[float, float]:
    """Span must hold three lifters per side; the vertiport must hold four."""
    lim = cfg.limits
    core = 2.0 * lim.rotor_clearance + lim.fuselage_radius
    g1 = design.span - 2.0 * (3.0 * design.r_hover + core)
    g2 = lim.vertiport_width - 2.0 * (4.0 * design.r_hover + core)
    return g1, g2


def constraint_values(design: DesignVector, mass: MassBreakdown, mission: MissionResult,
                      ac: AcousticState, cfg: ScenarioConfig) -> dict[str, float]:
    lim = cfg.limits
    g1, g2 = geometry_constraints(design, cfg)
    return {
        "g1_span_rotor_fit": g1,
        "g2_vertiport_width": g2,
        "g3_mtom": lim.mtom_limit - mass.m_mtom,
        "g4_spl_hover": lim.spl_hover_limit - ac.spl_hover,
        "g5_rpm_hover": lim.rpm_limit - mission.hover.rpm,
        "g5_rpm_climb": lim.rpm_limit - mission.climb.rpm,
        "g5_rpm_cruise": lim.rpm_limit - mission.cruise.rpm,
        "g6_speed_climb": lim.speed_limit - mission.climb.speed,
        "g6_speed_cruise": lim.speed_limit - mission.cruise.speed,
    }


def constraint_scales(cfg: ScenarioConfig) -> np.ndarray:
    """Divisors that bring every constraint to order one."""
    lim = cfg.limits
    return np.array([lim.vertiport_width, lim.vertiport_width, lim.mtom_limit,
                     lim.spl_hover_limit, lim.rpm_limit, lim.rpm_limit, lim.rpm_limit,
                     lim.speed_limit, lim.speed_limit])


def objective_value(report: FullReport, name: str) -> float:
    """Objective in its natural sense (profit and FoM are to be maximized)."""
    if name == "max_profit":
        return report.profit.annual
    if name == "min_toc":
        return report.costs.toc
    if name == "min_gwp":
        return report.gwp.gwp_annual
    if name == "max_fom":
        return report.fom.fom
    raise ValueError(f"unknown objective {name!r}; expected one of {sorted(OBJECTIVES)}")


@functools.lru_cache(maxsize=32)
def _fingerprint(cfg: ScenarioConfig) -> str:
    return fingerprint(cfg)


@functools.lru_cache(maxsize=8)
def _modes(path: str | None):
    return tuple(default_modes() if path is None else load_modes(path))


def evaluate(design: DesignVector, cfg: ScenarioConfig, check_bounds: bool = True) -> FullReport:
    """Evaluate every discipline for ``design``.

    Raises :class:`BoundsError` for out-of-bounds input and
    :class:`EvaluationError` (with a stage tag) for model failures.
    """
    if check_bounds:
        design.check_bounds(cfg.bounds)
    stage = "mass"
    try:
        mass, mission = solve_mtom(design, cfg, return_mission=True)
        stage = "acoustics"
        ac = acoustic_state(mission, design, cfg)
        stage = "battery"
        ops = cfg.operations
        b = mission.budget
        bat = battery_ops(b.e_trip, b.e_design, mission.flight_time, design.c_charge,
                          ops.flying_days, ops.daily_window_h, cfg.battery)
        stage = "economics"
        util = utilization(mission.flight_time, bat.t_turnaround, cfg)
        costs = cost_breakdown(b.e_trip, b.e_design, mass.m_mtom, mass.m_empty, util, bat, cfg)
        prof = profit(costs, util, cfg)
        stage = "gwp"
        gwp = gwp_breakdown(b.e_trip, b.e_design, bat.replacements_per_year, util.fc_a, cfg)
        stage = "fom"
        fc = cfg.fom
        table = fom_table(_modes(fc.modes_csv), fc.distance_km, fc.weights,
                          extra={fc.evtol_label: evtol_trip_values(
                              costs.toc, gwp.gwp_cycle_total, mission.flight_time, cfg)})
        fom_row = table.row(fc.evtol_label)
    except BoundsError:
        raise
    except MODEL_ERRORS as exc:
        raise EvaluationError(f"{stage}: {exc}", tag=f"{stage}:{type(exc).__name__}") from exc
    cons = constraint_values(design, mass, mission, ac, cfg)
    if not all(math.isfinite(v) for v in cons.values()):
        raise EvaluationError("non-finite constraint value", tag="constraints:nonfinite")
    return FullReport(design=design, mass=mass, mission=mission, acoustics=ac, battery=bat,
                      utilization=util, costs=costs, profit=prof, gwp=gwp, fom=fom_row,
                      constraints=cons, fingerprint=_fingerprint(cfg), warnings=mass.warnings)


def report_summary(report: FullReport) -> dict[str, float]:
    """Flat dictionary of headline numbers."""
    m, mi, c = report.mass, report.mission, report.costs
    return {
        "mtom": m.m_mtom, "m_empty": m.m_empty, "m_battery": m.m_battery,
        "e_trip": mi.budget.e_trip, "e_design": mi.budget.e_design, "dod": mi.budget.dod,
        "v_cruise": mi.cruise.speed, "t_flight_min": mi.flight_time / 60.0,
        "lift_to_drag": mi.cruise.lift_to_drag, "p_hover": mi.hover.power,
        "p_climb": mi.climb.power, "p_cruise": mi.cruise.power,
        "spl_hover": report.acoustics.spl_hover, "n_cycles": report.battery.n_cycles,
        "t_turnaround_min": report.battery.t_turnaround_min,
        "replacements_per_year": report.battery.replacements_per_year,
        "fc_a": report.utilization.fc_a, "flight_hours_year": report.utilization.flight_hours_year,
        "toc": c.toc, "toc_per_skm": c.toc_per_skm, "profit_per_flight": report.profit.per_flight,
        "profit_annual": report.profit.annual, "gwp_cycle": report.gwp.gwp_cycle_total,
        "gwp_annual": report.gwp.gwp_annual, "fom": report.fom.fom,
    }


def as_plain(obj):
    """Recursively convert dataclasses / numpy scalars into JSON-ready values."""
    if hasattr(obj, "__dataclass_fields__"):
        return {k: as_plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): as_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [as_plain(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj
