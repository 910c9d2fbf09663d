"""Mass estimation and the MTOM / mission-energy fixed point.

Component regressions are general-aviation statistical fits evaluated in
imperial units (lb, ft, kt) and returned in kg:

* wing, fuselage: Nicolai (USAF light-aircraft equations)
* landing gear, flight controls, avionics, electrical, furnishings: Raymer
  general-aviation equations
* rotors: per-rotor power law in radius
* motors: per-propulsor power law in installed power (required power times
  the sizing margin)

Every coefficient and the calibration multipliers live in
:class:`~evtol_mdo.config.MassConfig`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .config import BatteryConfig, MassConfig, ScenarioConfig
from .design import DesignVector
from .mission import MissionResult, fly_mission

__all__ = [
    "MassBreakdown",
    "MtomDivergenceError",
    "payload_mass",
    "battery_mass",
    "design_capacity",
    "wing_mass",
    "fuselage_mass",
    "gear_mass",
    "systems_mass",
    "furnish_mass",
    "rotor_mass",
    "motor_mass",
    "empty_mass",
    "solve_mtom",
]

LB_PER_KG = 2.2046226218
FT_PER_M = 3.280839895
KT_PER_MS = 1.9438444924
IN_PER_M = 39.37007874


class MtomDivergenceError(RuntimeError):
    """The MTOM fixed point did not converge; ``trace`` holds the iterates."""

    def __init__(self, message: str, trace: list[float]):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class MassBreakdown:
    m_mtom: float
    m_empty: float
    m_battery: float
    m_payload: float
    m_wing: float
    m_fuselage: float
    m_gear: float
    m_rotor: float
    m_motor: float
    m_systems: float
    m_furnish: float
    m_crew: float
    iterations: int = 0
    warnings: tuple[str, ...] = field(default=())

    @property
    def empty_fraction(self) -> float:
        return self.m_empty / self.m_mtom

    @property
    def battery_fraction(self) -> float:
        return self.m_battery / self.m_mtom


def payload_mass(cfg: ScenarioConfig, load_factor: float | None = None,
                 seats: int | None = None) -> float:
    """Passenger plus luggage mass; sizing uses ``operations.sizing_load_factor``."""
    ops = cfg.operations
    lf = ops.sizing_load_factor if load_factor is None else load_factor
    n = ops.seats if seats is None else seats
    return (cfg.mass.passenger_mass + cfg.mass.luggage_mass) * n * lf


def design_capacity(e_trip: float, e_res: float, usable_fraction: float = BatteryConfig.usable_fraction) -> float:
    """Installed pack capacity [kWh] needed for trip + reserve energy."""
    return (e_trip + e_res) / usable_fraction


def battery_mass(e_trip: float, e_res: float, rho_bat: float,
                 usable_fraction: float = BatteryConfig.usable_fraction) -> float:
    """Pack mass [kg] from trip and reserve energy [kWh] and density [Wh/kg]."""
    if rho_bat <= 0:
        raise ValueError("battery energy density must be positive")
    if e_trip < 0 or e_res < 0:
        raise ValueError("energies must be non-negative")
    return (e_trip + e_res) * 1000.0 / (usable_fraction * rho_bat)


def wing_mass(m_mtom: float, span: float, chord: float, mc: MassConfig) -> float:
    k, e_w, e_ar, e_s, e_tc, e_v, e_all = mc.wing_regression
    w = m_mtom * LB_PER_KG
    s_ft2 = span * chord * FT_PER_M ** 2
    ar = span / chord
    v_e = mc.design_dive_speed * KT_PER_MS
    inner = ((w * mc.ultimate_load_factor / 1e5) ** e_w * ar ** e_ar * (s_ft2 / 100.0) ** e_s
             * ((1.0 + mc.taper_ratio) / (2.0 * mc.thickness_ratio)) ** e_tc
             * (1.0 + v_e / 500.0) ** e_v)
    return mc.wing_factor * k * inner ** e_all / LB_PER_KG


def fuselage_mass(m_mtom: float, mc: MassConfig) -> float:
    k, e_w, e_l, e_v, e_all = mc.fuselage_regression
    w = m_mtom * LB_PER_KG
    l_ft = mc.fuselage_length * FT_PER_M
    wd_ft = (mc.fuselage_width + mc.fuselage_depth) * FT_PER_M
    v_e = mc.design_dive_speed * KT_PER_MS
    inner = ((w * mc.ultimate_load_factor / 1e5) ** e_w * (l_ft / 10.0) ** e_l
             * (wd_ft / 10.0) * (v_e / 100.0) ** e_v)
    return mc.fuselage_factor * k * inner ** e_all / LB_PER_KG


def gear_mass(m_mtom: float, mc: MassConfig) -> float:
    km, em, elm, kn, en, eln = mc.gear_regression
    nw = mc.landing_load_factor * m_mtom * LB_PER_KG
    main = km * nw ** em * (mc.main_gear_length * IN_PER_M / 12.0) ** elm
    nose = kn * nw ** en * (mc.nose_gear_length * IN_PER_M / 12.0) ** eln
    return mc.gear_factor * (main + nose) / LB_PER_KG


def systems_mass(m_mtom: float, span: float, mc: MassConfig) -> float:
    """Flight controls, installed avionics and electrical system."""
    kf, efl, efb, efw, ka, ea, ke, ee = mc.systems_regression
    w = m_mtom * LB_PER_KG
    l_ft = mc.fuselage_length * FT_PER_M
    b_ft = span * FT_PER_M
    controls = kf * l_ft ** efl * b_ft ** efb * (mc.ultimate_load_factor * w * 1e-4) ** efw
    avionics = ka * (mc.avionics_mass * LB_PER_KG) ** ea
    electrical = ke * avionics ** ee
    return mc.systems_factor * (controls + avionics + electrical) / LB_PER_KG


def furnish_mass(m_mtom: float, mc: MassConfig) -> float:
    k, c = mc.furnish_regression
    return mc.furnish_factor * max(k * m_mtom * LB_PER_KG - c, 0.0) / LB_PER_KG


def rotor_mass(radius: float, mc: MassConfig) -> float:
    """Mass of one rotor [kg]."""
    return mc.rotor_coeff * radius ** mc.rotor_exponent


def motor_mass(p_required: float, margin: float, mc: MassConfig) -> float:
    """Mass of one motor [kg] sized for ``margin`` times ``p_required`` [kW]."""
    return mc.motor_coeff * (margin * p_required) ** mc.motor_exponent


def empty_mass(design: DesignVector, m_mtom: float, p_lift: float, p_cruise: float,
               cfg: ScenarioConfig) -> dict[str, float]:
    """Empty-mass components [kg] for per-propulsor required powers [kW]."""
    mc, pr = cfg.mass, cfg.propulsion
    if m_mtom <= 0:
        raise ValueError("MTOM must be positive")
    parts = {
        "m_wing": wing_mass(m_mtom, design.span, design.chord, mc),
        "m_fuselage": fuselage_mass(m_mtom, mc),
        "m_gear": gear_mass(m_mtom, mc),
        "m_rotor": (pr.n_lift * rotor_mass(design.r_hover, mc)
                    + pr.n_cruise * rotor_mass(design.r_cruise, mc)),
        "m_motor": (pr.n_lift * motor_mass(p_lift, pr.power_sizing_margin, mc)
                    + pr.n_cruise * motor_mass(p_cruise, pr.power_sizing_margin, mc)),
        "m_systems": systems_mass(m_mtom, design.span, mc),
        "m_furnish": furnish_mass(m_mtom, mc),
        "m_crew": cfg.operations.pilot_count * mc.crew_mass,
    }
    return parts


def _validity_warnings(m_mtom: float, design: DesignVector, mc: MassConfig) -> tuple[str, ...]:
    out = []
    lo, hi = mc.regression_mtom_range
    if not lo <= m_mtom <= hi:
        out.append(f"MTOM {m_mtom:.0f} kg outside general-aviation regression range")
    if design.span / design.chord > mc.regression_max_aspect_ratio:
        out.append("aspect ratio above regression data range")
    return tuple(out)


def _loop_body(m: float, design: DesignVector, cfg: ScenarioConfig,
               fly: Callable[[float, DesignVector, ScenarioConfig], MissionResult]):
    mission = fly(m, design, cfg)
    pr = cfg.propulsion
    parts = empty_mass(design, m, mission.lift_motor_power(pr.n_lift),
                       mission.cruise_motor_power(pr.n_cruise), cfg)
    b = mission.budget
    m_bat = battery_mass(b.e_trip, b.e_res, design.rho_bat, cfg.battery.usable_fraction)
    m_pay = payload_mass(cfg)
    m_empty = sum(parts.values())
    return m_pay + m_empty + m_bat, parts, m_bat, m_pay, mission


def solve_mtom(design: DesignVector, cfg: ScenarioConfig, initial_guess: float | None = None,
               fly: Callable[[float, DesignVector, ScenarioConfig], MissionResult] = fly_mission,
               return_mission: bool = False):
    """Converge MTOM = payload + empty(MTOM) + battery(MTOM).

    Plain successive substitution is accelerated with Wegstein's method; the
    acceleration factor is clipped so the step never leaves the damped
    region, and pure 0.5 damping takes over if the iterates oscillate.

    Power-driven masses can give a second, unstable closure above the
    physical one; a start above it runs away. In that case the iteration is
    restarted from payload plus crew, below every closure, from where it
    climbs to the lowest one.
    """
    m0 = cfg.mass.mtom_initial_guess if initial_guess is None else initial_guess
    try:
        return _iterate_mtom(m0, design, cfg, fly, return_mission)
    except MtomDivergenceError as first:
        m_low = payload_mass(cfg) + cfg.operations.pilot_count * cfg.mass.crew_mass
        if m_low <= 0 or m_low >= m0:
            raise
        try:
            return _iterate_mtom(m_low, design, cfg, fly, return_mission)
        except MtomDivergenceError as second:
            raise MtomDivergenceError(str(second), first.trace + second.trace) from None


def _iterate_mtom(m: float, design: DesignVector, cfg: ScenarioConfig, fly,
                  return_mission: bool):
    mc = cfg.mass
    trace = [m]
    x_prev = g_prev = None
    damped = False
    for it in range(1, mc.mtom_max_iter + 1):
        try:
            g, parts, m_bat, m_pay, mission = _loop_body(m, design, cfg, fly)
        except (OverflowError, ZeroDivisionError) as exc:
            raise MtomDivergenceError(f"MTOM evaluation failed at {m:.1f} kg: {exc}", trace)
        if not math.isfinite(g):
            raise MtomDivergenceError("non-finite MTOM iterate", trace)
        if abs(g - m) <= mc.mtom_tolerance * max(1.0, m / 1000.0):
            m_empty = sum(parts.values())
            # exact closure of the mass identity at the returned value
            breakdown = MassBreakdown(m_mtom=m_pay + m_empty + m_bat, m_empty=m_empty,
                                      m_battery=m_bat, m_payload=m_pay, iterations=it,
                                      warnings=_validity_warnings(m, design, mc), **parts)
            return (breakdown, mission) if return_mission else breakdown
        if x_prev is not None and m != x_prev:
            slope = (g - g_prev) / (m - x_prev)
            q = slope / (slope - 1.0) if slope != 1.0 else 0.0
            q = min(max(q, -5.0), 0.5 if damped else 0.0) if slope < 0 else min(max(q, -5.0), 0.0)
            if slope < 0 and len(trace) > 3 and (trace[-1] - trace[-2]) * (trace[-2] - trace[-3]) < 0:
                damped = True
        else:
            q = 0.0
        if damped:
            q = max(q, 0.5)
        m_next = q * m + (1.0 - q) * g
        if m_next <= 0:
            m_next = 0.5 * m
        x_prev, g_prev = m, g
        m = m_next
        trace.append(m)
        if m > mc.mtom_divergence_limit:
            raise MtomDivergenceError(
                f"MTOM iterate {m:.0f} kg exceeds {mc.mtom_divergence_limit:.0f} kg "
                "(no mass closure)", trace)
    raise MtomDivergenceError(
        f"MTOM did not converge in {mc.mtom_max_iter} iterations "
        f"(last {trace[-1]:.3f} kg)", trace)
