"""Battery cycle life, turnaround time and annual pack consumption."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import BatteryConfig

__all__ = [
    "BatteryOps",
    "turnaround_time",
    "discharge_rate",
    "cycle_life",
    "annual_batteries",
    "battery_ops",
    "fit_cycle_life",
]


@dataclass(frozen=True)
class BatteryOps:
    n_cycles: float
    c_charge: float  # 1/h
    c_dis_avg: float  # 1/h
    dod: float
    t_turnaround: float  # s
    replacements_per_year: float

    @property
    def t_turnaround_min(self) -> float:
        return self.t_turnaround / 60.0


def turnaround_time(dod: float, c_charge: float) -> float:
    """Time [h] to recharge the energy drawn on one trip."""
    if c_charge <= 0:
        raise ValueError("charging rate must be positive")
    if dod < 0:
        raise ValueError("depth of discharge must be non-negative")
    return dod / c_charge


def discharge_rate(e_trip: float, e_design: float, t_flight_h: float) -> float:
    """Trip-average discharge C-rate [1/h]."""
    if e_design <= 0 or t_flight_h <= 0:
        raise ValueError("capacity and flight time must be positive")
    return e_trip / (e_design * t_flight_h)


def cycle_life(dod: float, c_charge: float, c_dis: float, model: BatteryConfig) -> float:
    """Power-law cycle life to the end-of-life capacity."""
    if dod <= 0 or c_charge <= 0 or c_dis <= 0:
        raise ValueError("DoD and C-rates must be positive")
    return (model.cycle_life_ref
            * (model.dod_ref / dod) ** model.k_dod
            * (model.c_rate_ref / c_charge) ** model.k_charge
            * (model.c_rate_ref / c_dis) ** model.k_discharge)


def annual_batteries(n_cycles: float, flying_days: float, daily_window_h: float,
                     t_trip_h: float, dh: float) -> float:
    """Pack replacements per year; ``dh`` = t_turnaround / t_trip + 1."""
    if math.isinf(n_cycles):
        return 0.0
    if n_cycles <= 0 or t_trip_h <= 0 or dh <= 0:
        raise ValueError("inputs must be positive")
    return flying_days * daily_window_h / (n_cycles * t_trip_h * dh)


def battery_ops(e_trip: float, e_design: float, t_flight: float, c_charge: float,
                flying_days: float, daily_window_h: float, model: BatteryConfig) -> BatteryOps:
    """All battery operating quantities for one design; ``t_flight`` in s."""
    t_h = t_flight / 3600.0
    dod = e_trip / e_design
    c_dis = discharge_rate(e_trip, e_design, t_h)
    t_turn_h = turnaround_time(dod, c_charge)
    n = cycle_life(dod, c_charge, c_dis, model)
    repl = annual_batteries(n, flying_days, daily_window_h, t_h, t_turn_h / t_h + 1.0)
    return BatteryOps(n_cycles=n, c_charge=c_charge, c_dis_avg=c_dis, dod=dod,
                      t_turnaround=t_turn_h * 3600.0, replacements_per_year=repl)


def fit_cycle_life(dod, c_charge, c_dis, n_cycles, dod_ref: float = 0.5,
                   c_rate_ref: float = 1.0) -> tuple[dict[str, float], np.ndarray]:
    """Least-squares power-law fit in log space.

    Returns the fitted parameters (``cycle_life_ref, k_dod, k_charge,
    k_discharge``) and the relative residuals per point.
    """
    dod, c_charge, c_dis, n_cycles = (np.asarray(v, dtype=float)
                                      for v in (dod, c_charge, c_dis, n_cycles))
    a = np.column_stack([np.ones_like(dod), np.log(dod_ref / dod),
                         np.log(c_rate_ref / c_charge), np.log(c_rate_ref / c_dis)])
    coef, *_ = np.linalg.lstsq(a, np.log(n_cycles), rcond=None)
    params = {"cycle_life_ref": float(np.exp(coef[0])), "k_dod": float(coef[1]),
              "k_charge": float(coef[2]), "k_discharge": float(coef[3])}
    pred = np.exp(a @ coef)
    return params, pred / n_cycles - 1.0
