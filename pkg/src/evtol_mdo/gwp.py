"""Operational global warming potential: grid electricity plus pack production."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .config import ScenarioConfig

__all__ = [
    "GwpBreakdown",
    "gwp_energy_cycle",
    "gwp_battery_cycle",
    "gwp_annual",
    "car_equivalents",
    "gwp_breakdown",
]


@dataclass(frozen=True)
class GwpBreakdown:
    gwp_energy_cycle: float  # kgCO2e per flight
    gwp_battery_cycle: float
    gwp_cycle_total: float
    gwp_annual: float  # tCO2e per year
    energy_share: float
    battery_share: float
    per_ask: float  # kgCO2e per available seat-km
    gasoline_cars: float
    electric_cars: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def gwp_energy_cycle(e_trip: float, cfg: ScenarioConfig) -> float:
    if e_trip < 0:
        raise ValueError("trip energy must be non-negative")
    return e_trip * cfg.environment.grid_gwp


def gwp_battery_cycle(n_bat_year: float, fc_a: float, e_design: float,
                      cfg: ScenarioConfig) -> float:
    """Pack-production emissions allocated to one flight."""
    if fc_a <= 0:
        raise ValueError("annual flight cycles must be positive")
    return n_bat_year / fc_a * cfg.environment.battery_gwp * e_design


def gwp_annual(cycle_total: float, fc_a: float) -> float:
    """tCO2e per year."""
    return fc_a * cycle_total / 1000.0


def car_equivalents(annual_t: float, cfg: ScenarioConfig) -> tuple[float, float]:
    env = cfg.environment
    return annual_t / env.gasoline_car_t_per_year, annual_t / env.electric_car_t_per_year


def gwp_breakdown(e_trip: float, e_design: float, n_bat_year: float, fc_a: float,
                  cfg: ScenarioConfig) -> GwpBreakdown:
    ge = gwp_energy_cycle(e_trip, cfg)
    gb = gwp_battery_cycle(n_bat_year, fc_a, e_design, cfg)
    total = ge + gb
    annual = gwp_annual(total, fc_a)
    gas, ev = car_equivalents(annual, cfg)
    ask = cfg.operations.seats * cfg.mission.trip_distance / 1000.0
    return GwpBreakdown(
        gwp_energy_cycle=ge, gwp_battery_cycle=gb, gwp_cycle_total=total, gwp_annual=annual,
        energy_share=ge / total if total > 0 else 1.0,
        battery_share=gb / total if total > 0 else 0.0,
        per_ask=total / ask, gasoline_cars=gas, electric_cars=ev)
