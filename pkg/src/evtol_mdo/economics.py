"""Utilization, per-flight operating cost hierarchy, revenue and profit.

TOC = DOC + IOC, DOC = COC + COO,
COC = energy + crew + navigation + wrap-rate maintenance + battery replacement,
COO = insurance + depreciation.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .battery import BatteryOps
from .config import EconomicConfig, ScenarioConfig

__all__ = [
    "Utilization",
    "CostBreakdown",
    "Profit",
    "utilization",
    "annuity_factor",
    "navigation_charge",
    "cost_breakdown",
    "profit",
]


@dataclass(frozen=True)
class Utilization:
    t_flight: float  # s
    t_turnaround: float  # s
    t_leg: float  # s
    flights_per_day: float
    fc_a: float  # flight cycles per year
    flight_hours_year: float


@dataclass(frozen=True)
class CostBreakdown:
    c_e: float
    c_c: float
    c_n: float
    c_wrm: float
    c_mb: float
    coc: float
    c_ins: float
    c_dep: float
    coo: float
    doc: float
    ioc: float
    toc: float
    toc_per_skm: float

    def shares(self) -> dict[str, float]:
        """Percent of TOC per leaf item; sums to 100."""
        leaves = {"energy": self.c_e, "crew": self.c_c, "navigation": self.c_n,
                  "maintenance": self.c_wrm, "battery": self.c_mb, "insurance": self.c_ins,
                  "depreciation": self.c_dep, "indirect": self.ioc}
        if self.toc <= 0:
            return {k: 0.0 for k in leaves}
        return {k: 100.0 * v / self.toc for k, v in leaves.items()}

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class Profit:
    revenue_per_flight: float
    per_flight: float
    annual: float


def utilization(t_flight: float, t_turnaround: float, cfg: ScenarioConfig) -> Utilization:
    """Annual utilization for leg time = flight + turnaround (both in s)."""
    if t_flight < 0 or t_turnaround < 0 or t_flight + t_turnaround <= 0:
        raise ValueError("flight and turnaround times must be non-negative with a positive sum")
    ops = cfg.operations
    t_leg = t_flight + t_turnaround
    per_day = ops.daily_window_h * 3600.0 / t_leg
    fc_a = ops.flying_days * per_day
    return Utilization(t_flight=t_flight, t_turnaround=t_turnaround, t_leg=t_leg,
                       flights_per_day=per_day, fc_a=fc_a,
                       flight_hours_year=fc_a * t_flight / 3600.0)


def annuity_factor(rate: float, years: float) -> float:
    """Capital recovery factor r / (1 - (1 + r)^-n); 1/n at zero interest."""
    if rate == 0:
        return 1.0 / years
    return rate / (1.0 - (1.0 + rate) ** -years)


def navigation_charge(distance_km: float, m_mtom: float, ec: EconomicConfig) -> float:
    """Route charge: unit rate x distance factor x weight factor."""
    return (ec.nav_unit_rate * distance_km / ec.nav_reference_distance_km
            * math.sqrt(m_mtom / 1000.0 / ec.nav_reference_mass_t))


def cost_breakdown(e_trip: float, e_design: float, m_mtom: float, m_empty: float,
                   util: Utilization, bat: BatteryOps, cfg: ScenarioConfig) -> CostBreakdown:
    """Per-flight cost hierarchy [EUR]."""
    ec, ops = cfg.economics, cfg.operations
    if util.fc_a <= 0:
        raise ValueError("annual flight cycles must be positive")
    distance_km = cfg.mission.trip_distance / 1000.0
    c_e = e_trip * ec.electricity_price
    c_c = ops.pilot_count * ec.annual_crew_cost / util.fc_a
    c_n = navigation_charge(distance_km, m_mtom, ec)
    c_wrm = ec.maintenance_wrap_rate * util.t_flight / 3600.0
    c_mb = bat.replacements_per_year * ec.battery_pack_price * e_design / util.fc_a
    coc = c_e + c_c + c_n + c_wrm + c_mb
    c_ins = ec.insurance_fraction * coc
    price = ec.acquisition_price_per_kg * m_empty
    c_dep = price * annuity_factor(ec.interest_rate, ec.depreciation_years) / util.fc_a
    coo = c_ins + c_dep
    doc = coc + coo
    ioc = ec.ioc_fraction * doc
    toc = doc + ioc
    return CostBreakdown(c_e=c_e, c_c=c_c, c_n=c_n, c_wrm=c_wrm, c_mb=c_mb, coc=coc,
                         c_ins=c_ins, c_dep=c_dep, coo=coo, doc=doc, ioc=ioc, toc=toc,
                         toc_per_skm=toc / (ops.seats * distance_km))


def profit(costs: CostBreakdown, util: Utilization, cfg: ScenarioConfig) -> Profit:
    """Fare revenue per vehicle-km over the trip minus TOC."""
    fare = cfg.economics.fare_per_km
    if fare < 0:
        raise ValueError("fare must be non-negative")
    revenue = fare * cfg.mission.trip_distance / 1000.0
    per_flight = revenue - costs.toc
    return Profit(revenue_per_flight=revenue, per_flight=per_flight,
                  annual=util.fc_a * per_flight)
