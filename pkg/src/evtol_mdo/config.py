"""Scenario configuration: every fixed constant the models read.

A :class:`ScenarioConfig` is a tree of frozen dataclasses. It is loaded from a
YAML file whose keys mirror the attribute names; anything omitted takes the
default below. Units are SI unless a field name says otherwise (``_kwh``,
``_wh_per_kg``, ``_min``, ``_h``, ``_deg``, ``_eur``).
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

__all__ = [
    "ConfigError",
    "MissionProfile",
    "OperationsConfig",
    "EconomicConfig",
    "EnvironmentConfig",
    "RegulatoryLimits",
    "DesignBounds",
    "AeroConfig",
    "PropulsionConfig",
    "MassConfig",
    "BatteryConfig",
    "AcousticsConfig",
    "FomConfig",
    "OptimizerConfig",
    "BenchmarkConfig",
    "ScenarioConfig",
    "DESIGN_VARIABLES",
    "load_scenario",
    "scenario_from_dict",
    "scenario_to_dict",
    "dump_scenario",
    "fingerprint",
]


class ConfigError(ValueError):
    """Raised when a scenario file cannot be parsed or violates an invariant.

    ``field`` holds the dotted path of the offending entry, when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


def _require(cond: bool, name: str, msg: str) -> None:
    if not cond:
        raise ConfigError(msg, field=name)


@dataclass(frozen=True)
class MissionProfile:
    trip_distance: float = 70_000.0  # m, straight line
    cruise_altitude: float = 1219.2  # m AGL (4000 ft)
    hover_time_total: float = 60.0  # s, take-off + landing hover
    reserve_time_min: float = 20.0  # min at cruise power
    climb_angle_deg: float = 10.0
    air_density_sl: float = 1.225  # kg/m^3, ISA sea level
    air_density_cruise: float = 1.0879  # kg/m^3, ISA at 4000 ft
    gravity: float = 9.80665

    def validate(self) -> None:
        _require(self.trip_distance > 0, "mission.trip_distance", "must be > 0")
        _require(self.cruise_altitude > 0, "mission.cruise_altitude", "must be > 0")
        _require(self.reserve_time_min >= 0, "mission.reserve_time_min", "must be >= 0")
        _require(self.hover_time_total >= 0, "mission.hover_time_total", "must be >= 0")
        _require(0 < self.climb_angle_deg < 90, "mission.climb_angle_deg", "must be in (0, 90)")
        _require(self.air_density_sl > 0, "mission.air_density_sl", "must be > 0")
        _require(self.air_density_cruise > 0, "mission.air_density_cruise", "must be > 0")
        _require(self.gravity > 0, "mission.gravity", "must be > 0")


@dataclass(frozen=True)
class OperationsConfig:
    working_days: float = 280.0
    daily_window_h: float = 8.0
    # Share of working days actually flown. The published annual cycle counts
    # correspond to 260 of the 280 working days.
    availability: float = 260.0 / 280.0
    load_factor: float = 0.67
    sizing_load_factor: float = 1.0
    seats: int = 4
    pilot_count: int = 1

    @property
    def flying_days(self) -> float:
        return self.working_days * self.availability

    def validate(self) -> None:
        _require(0 < self.load_factor <= 1, "operations.load_factor", "must be in (0, 1]")
        _require(0 <= self.sizing_load_factor <= 1, "operations.sizing_load_factor",
                 "must be in [0, 1]")
        _require(1 <= self.working_days <= 366, "operations.working_days", "must be in [1, 366]")
        _require(0 < self.daily_window_h <= 24, "operations.daily_window_h", "must be in (0, 24]")
        _require(0 < self.availability <= 1, "operations.availability", "must be in (0, 1]")
        _require(self.seats >= 1, "operations.seats", "must be >= 1")
        _require(self.pilot_count >= 0, "operations.pilot_count", "must be >= 0")


@dataclass(frozen=True)
class EconomicConfig:
    electricity_price: float = 0.0967  # EUR/kWh
    fare_per_km: float = 5.38  # EUR per vehicle-km
    battery_pack_price: float = 115.0  # EUR/kWh of design capacity
    ioc_fraction: float = 0.22  # of DOC
    insurance_fraction: float = 0.06  # of COC
    annual_crew_cost: float = 47_100.0  # EUR/yr
    maintenance_wrap_rate: float = 33.0  # EUR per flight hour
    nav_unit_rate: float = 137.5  # EUR
    nav_reference_distance_km: float = 100.0
    nav_reference_mass_t: float = 50.0
    # Acquisition price is charged per kg of empty mass (airframe, motors,
    # rotors, systems); the battery is costed separately via pack replacements.
    acquisition_price_per_kg: float = 882.0  # EUR/kg empty mass
    interest_rate: float = 0.05
    depreciation_years: float = 10.0

    def validate(self) -> None:
        for name in ("electricity_price", "fare_per_km", "battery_pack_price",
                     "annual_crew_cost", "maintenance_wrap_rate", "nav_unit_rate",
                     "acquisition_price_per_kg", "interest_rate"):
            _require(getattr(self, name) >= 0, f"economics.{name}", "must be >= 0")
        _require(0 <= self.ioc_fraction < 1, "economics.ioc_fraction", "must be in [0, 1)")
        _require(0 <= self.insurance_fraction < 1, "economics.insurance_fraction",
                 "must be in [0, 1)")
        _require(self.depreciation_years > 0, "economics.depreciation_years", "must be > 0")
        _require(self.nav_reference_distance_km > 0 and self.nav_reference_mass_t > 0,
                 "economics.nav_reference_distance_km", "references must be > 0")


@dataclass(frozen=True)
class EnvironmentConfig:
    grid_gwp: float = 0.38  # kgCO2e/kWh
    battery_gwp: float = 124.5  # kgCO2e per kWh of capacity
    gasoline_car_t_per_year: float = 4.29  # tCO2e per car-year, report only
    electric_car_t_per_year: float = 1.13

    def validate(self) -> None:
        _require(self.grid_gwp >= 0, "environment.grid_gwp", "must be >= 0")
        _require(self.battery_gwp >= 0, "environment.battery_gwp", "must be >= 0")
        _require(self.gasoline_car_t_per_year > 0, "environment.gasoline_car_t_per_year",
                 "must be > 0")
        _require(self.electric_car_t_per_year > 0, "environment.electric_car_t_per_year",
                 "must be > 0")


@dataclass(frozen=True)
class RegulatoryLimits:
    mtom_limit: float = 5700.0  # kg
    spl_hover_limit: float = 77.0  # dB(A) at 250 ft
    rpm_limit: float = 3000.0
    speed_limit: float = 129.0  # m/s, climb and cruise
    vertiport_width: float = 15.0  # m
    rotor_clearance: float = 0.1  # m
    fuselage_radius: float = 0.33  # m

    def validate(self) -> None:
        for f in fields(self):
            _require(getattr(self, f.name) > 0, f"limits.{f.name}", "must be > 0")


DESIGN_VARIABLES = ("span", "chord", "r_cruise", "r_hover", "rho_bat", "c_charge")


@dataclass(frozen=True)
class DesignBounds:
    span: tuple[float, float] = (6.0, 15.0)
    chord: tuple[float, float] = (1.0, 2.5)
    r_cruise: tuple[float, float] = (0.5, 2.5)
    r_hover: tuple[float, float] = (0.5, 2.0)
    rho_bat: tuple[float, float] = (200.0, 400.0)
    c_charge: tuple[float, float] = (1.0, 4.0)

    def as_arrays(self) -> tuple[list[float], list[float]]:
        lo = [getattr(self, n)[0] for n in DESIGN_VARIABLES]
        hi = [getattr(self, n)[1] for n in DESIGN_VARIABLES]
        return lo, hi

    def validate(self) -> None:
        for n in DESIGN_VARIABLES:
            lo, hi = getattr(self, n)
            _require(lo < hi, f"bounds.{n}", "lower bound must be below upper bound")
            _require(lo > 0, f"bounds.{n}", "bounds must be positive")


@dataclass(frozen=True)
class AeroConfig:
    # NACA 2412, Re = 4e6 (XFOIL polar): lift-curve slope and zero-alpha lift.
    airfoil_lift_slope: float = 6.30  # 1/rad
    cl0: float = 0.228
    oswald: float = 0.8
    cd_min: float = 0.0397
    alpha_cruise_deg: float = 4.0
    alpha_max_deg: float = 12.0

    def validate(self) -> None:
        _require(self.airfoil_lift_slope > 0, "aero.airfoil_lift_slope", "must be > 0")
        _require(0 < self.oswald <= 1, "aero.oswald", "must be in (0, 1]")
        _require(self.cd_min > 0, "aero.cd_min", "must be > 0")
        _require(self.alpha_max_deg > 0, "aero.alpha_max_deg", "must be > 0")
        _require(abs(self.alpha_cruise_deg) <= self.alpha_max_deg, "aero.alpha_cruise_deg",
                 "outside the linear lift range")


@dataclass(frozen=True)
class PropulsionConfig:
    n_lift: int = 8
    n_cruise: int = 1
    eta_hover: float = 0.63
    eta_climb: float = 0.776
    eta_cruise: float = 0.738
    # T = C_T rho A (Omega R)^2, held constant per rotor type
    thrust_coefficient_lift: float = 0.005
    thrust_coefficient_cruise: float = 0.015
    blades_lift: int = 3
    blades_cruise: int = 3
    solidity: float = 0.10
    power_sizing_margin: float = 1.5

    def validate(self) -> None:
        _require(self.n_lift >= 1, "propulsion.n_lift", "must be >= 1")
        _require(self.n_cruise >= 1, "propulsion.n_cruise", "must be >= 1")
        for n in ("eta_hover", "eta_climb", "eta_cruise"):
            _require(0 < getattr(self, n) <= 1, f"propulsion.{n}", "must be in (0, 1]")
        for n in ("thrust_coefficient_lift", "thrust_coefficient_cruise"):
            _require(getattr(self, n) > 0, f"propulsion.{n}", "must be > 0")
        _require(self.blades_lift >= 1 and self.blades_cruise >= 1, "propulsion.blades_lift",
                 "blade counts must be >= 1")
        _require(0 < self.solidity < 1, "propulsion.solidity", "must be in (0, 1)")
        _require(self.power_sizing_margin >= 1, "propulsion.power_sizing_margin", "must be >= 1")


@dataclass(frozen=True)
class MassConfig:
    passenger_mass: float = 84.0  # kg
    luggage_mass: float = 14.2  # kg per passenger
    crew_mass: float = 85.0  # kg per pilot
    ultimate_load_factor: float = 5.7
    landing_load_factor: float = 4.5
    design_dive_speed: float = 129.0  # m/s, wing and fuselage regressions
    thickness_ratio: float = 0.12
    taper_ratio: float = 1.0
    fuselage_length: float = 7.0  # m
    fuselage_width: float = 1.5
    fuselage_depth: float = 1.6
    main_gear_length: float = 0.6  # m, strut
    nose_gear_length: float = 0.6
    avionics_mass: float = 25.0  # kg uninstalled
    # Regression coefficients and exponents (imperial units, see mass.py).
    wing_regression: tuple = (96.948, 0.65, 0.57, 0.61, 0.36, 0.5, 0.993)
    fuselage_regression: tuple = (200.0, 0.286, 0.857, 0.338, 1.1)
    gear_regression: tuple = (0.095, 0.768, 0.409, 0.125, 0.566, 0.845)
    systems_regression: tuple = (0.053, 1.536, 0.371, 0.80, 2.117, 0.933, 12.57, 0.51)
    furnish_regression: tuple = (0.0582, 65.0)
    # Data range of the regressions; outside it a warning is attached.
    regression_mtom_range: tuple = (500.0, 5700.0)  # kg
    regression_max_aspect_ratio: float = 16.0
    # Motor mass: k * (s * P_required)^p per propulsor, P in kW.
    motor_coeff: float = 0.40
    motor_exponent: float = 1.0
    # Rotor mass: k * R^p per rotor, R in m.
    rotor_coeff: float = 10.0
    rotor_exponent: float = 2.0
    # Calibration multipliers on the general-aviation regressions.
    wing_factor: float = 0.64
    fuselage_factor: float = 0.26
    gear_factor: float = 0.26
    systems_factor: float = 0.26
    furnish_factor: float = 0.26
    # MTOM fixed point
    mtom_initial_guess: float = 2000.0
    mtom_tolerance: float = 1e-9  # kg
    mtom_max_iter: int = 100
    mtom_divergence_limit: float = 50_000.0  # kg, iterate above this = divergent

    def validate(self) -> None:
        lengths = {"wing_regression": 7, "fuselage_regression": 5, "gear_regression": 6,
                   "systems_regression": 8, "furnish_regression": 2,
                   "regression_mtom_range": 2}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                _require(len(v) == lengths[f.name], f"mass.{f.name}",
                         f"expected {lengths[f.name]} values")
                continue
            _require(v >= 0, f"mass.{f.name}", "must be >= 0")
        _require(self.mtom_tolerance > 0, "mass.mtom_tolerance", "must be > 0")
        _require(self.mtom_max_iter >= 1, "mass.mtom_max_iter", "must be >= 1")
        _require(self.mtom_initial_guess > 0, "mass.mtom_initial_guess", "must be > 0")


@dataclass(frozen=True)
class BatteryConfig:
    eol_capacity_fraction: float = 0.8  # 20 % fade at end of life
    soc_window_fraction: float = 0.8  # 10 % floor + 10 % ceiling unusable
    # Usable share of installed capacity, eol x soc window. Stored rather than
    # computed so that e_usable = 0.64 rho holds exactly in binary floating point.
    usable_fraction: float = 0.64
    # Cycle life N = N_ref (DoD_ref/DoD)^k_dod (C_ref/C_ch)^k_charge (C_ref/C_dis)^k_dis
    cycle_life_ref: float = 4359.0
    dod_ref: float = 0.5
    c_rate_ref: float = 1.0
    k_dod: float = 0.2514
    k_charge: float = 1.184
    k_discharge: float = 1.220

    def validate(self) -> None:
        _require(0 < self.eol_capacity_fraction <= 1, "battery.eol_capacity_fraction",
                 "must be in (0, 1]")
        _require(0 < self.soc_window_fraction <= 1, "battery.soc_window_fraction",
                 "must be in (0, 1]")
        _require(math.isclose(self.usable_fraction,
                              self.eol_capacity_fraction * self.soc_window_fraction,
                              rel_tol=1e-9),
                 "battery.usable_fraction", "must equal eol_capacity_fraction x soc_window_fraction")
        for n in ("cycle_life_ref", "dod_ref", "c_rate_ref"):
            _require(getattr(self, n) > 0, f"battery.{n}", "must be > 0")
        for n in ("k_dod", "k_charge", "k_discharge"):
            _require(getattr(self, n) >= 0, f"battery.{n}", "must be >= 0")


@dataclass(frozen=True)
class AcousticsConfig:
    hover_observer_distance: float = 76.2  # m (250 ft)
    climb_observer_distance: float = 76.2
    cruise_observer_distance: float = 1219.2  # m (4000 ft)
    observer_angle_deg: float = 90.0  # from the thrust axis
    effective_radius_fraction: float = 0.8
    speed_of_sound: float = 340.3
    reference_pressure: float = 2e-5  # Pa
    # Schlegel-King-Mull vortex noise, evaluated in ft and ft/s
    skm_constant: float = 6.1e-27
    skm_reference_distance_ft: float = 300.0
    skm_reference_cl: float = 0.4
    skm_pressure_ref_sq: float = 1e-16
    skm_reference_radius_fraction: float = 0.7
    skm_strouhal: float = 0.28
    blade_thickness_ratio: float = 0.12
    # Offset on the tonal model, calibrated against reference hover levels
    tonal_calibration_db: float = 24.25

    def validate(self) -> None:
        for f in fields(self):
            if f.name == "tonal_calibration_db":
                continue
            _require(getattr(self, f.name) > 0, f"acoustics.{f.name}", "must be > 0")


@dataclass(frozen=True)
class FomConfig:
    weights: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)  # cost, CO2e, time
    distance_km: float = 70.0
    evtol_label: str = "eVTOL"
    modes_csv: str | None = None  # None = bundled reference dataset
    # Occupants sharing one flight's cost and CO2e: "load_factor" uses
    # seats x operations.load_factor, "seats" uses every seat.
    pax_basis: str = "load_factor"

    def validate(self) -> None:
        _require(len(self.weights) == 3, "fom.weights", "needs three weights")
        _require(all(w >= 0 for w in self.weights), "fom.weights", "weights must be >= 0")
        _require(math.isclose(sum(self.weights), 1.0, abs_tol=1e-9), "fom.weights",
                 "weights must sum to 1")
        _require(self.distance_km > 0, "fom.distance_km", "must be > 0")
        _require(self.pax_basis in ("load_factor", "seats"), "fom.pax_basis",
                 "must be 'load_factor' or 'seats'")


@dataclass(frozen=True)
class BenchmarkConfig:
    """Industry requirement column for the benchmark table."""

    label: str = "Requirement"
    mtom: float = 1814.0  # kg
    specific_energy: float = 400.0  # Wh/kg
    cycle_life: float = 2000.0
    capacity: float = 140.0  # kWh
    cruise_speed_kmh: float = 320.0
    motion_efficiency: float = 1.24  # km/kWh
    hover_power: float = 500.0  # kW
    cruise_power: float = 120.0  # kW
    lift_to_drag: float = 13.0
    cost_per_pax_km: float = 0.27
    cost_per_pax_min: float = 1.27
    pooled_trip_cost: float = 19.0
    utilization_hours: float = 2080.0
    load_factor: float = 0.67
    piloting_share: float = 0.36  # of DOC
    maintenance_share: float = 0.22
    battery_share: float = 0.02
    energy_share: float = 0.12
    ownership_share: float = 0.08

    def validate(self) -> None:
        for f in fields(self):
            if f.name != "label":
                _require(getattr(self, f.name) >= 0, f"benchmark.{f.name}", "must be >= 0")


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 16
    seed: int = 0
    fd_step: float = 1e-4  # central differences, normalized variables
    ftol: float = 1e-8
    maxiter: int = 200
    feasibility_tol: float = 1e-6
    infeasible_penalty: float = 1e6
    # Normalized point that closes the mass loop; unevaluable starts are
    # pulled toward it.
    restore_anchor: tuple = (0.5, 0.0, 0.25, 0.6, 1.0, 0.3)

    def validate(self) -> None:
        _require(self.starts >= 1, "optimizer.starts", "must be >= 1")
        _require(self.fd_step > 0, "optimizer.fd_step", "must be > 0")
        _require(self.ftol > 0, "optimizer.ftol", "must be > 0")
        _require(self.maxiter >= 1, "optimizer.maxiter", "must be >= 1")
        _require(self.feasibility_tol >= 0, "optimizer.feasibility_tol", "must be >= 0")
        _require(len(self.restore_anchor) == len(DESIGN_VARIABLES)
                 and all(0 <= v <= 1 for v in self.restore_anchor),
                 "optimizer.restore_anchor", "needs six values in [0, 1]")


_SECTIONS = {
    "mission": MissionProfile,
    "operations": OperationsConfig,
    "economics": EconomicConfig,
    "environment": EnvironmentConfig,
    "limits": RegulatoryLimits,
    "bounds": DesignBounds,
    "aero": AeroConfig,
    "propulsion": PropulsionConfig,
    "mass": MassConfig,
    "battery": BatteryConfig,
    "acoustics": AcousticsConfig,
    "fom": FomConfig,
    "optimizer": OptimizerConfig,
    "benchmark": BenchmarkConfig,
}


@dataclass(frozen=True)
class ScenarioConfig:
    mission: MissionProfile = field(default_factory=MissionProfile)
    operations: OperationsConfig = field(default_factory=OperationsConfig)
    economics: EconomicConfig = field(default_factory=EconomicConfig)
    environment: EnvironmentConfig = field(default_factory=EnvironmentConfig)
    limits: RegulatoryLimits = field(default_factory=RegulatoryLimits)
    bounds: DesignBounds = field(default_factory=DesignBounds)
    aero: AeroConfig = field(default_factory=AeroConfig)
    propulsion: PropulsionConfig = field(default_factory=PropulsionConfig)
    mass: MassConfig = field(default_factory=MassConfig)
    battery: BatteryConfig = field(default_factory=BatteryConfig)
    acoustics: AcousticsConfig = field(default_factory=AcousticsConfig)
    fom: FomConfig = field(default_factory=FomConfig)
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    benchmark: BenchmarkConfig = field(default_factory=BenchmarkConfig)

    def validate(self) -> "ScenarioConfig":
        for name in _SECTIONS:
            getattr(self, name).validate()
        return self

    def replace(self, **sections: dict[str, Any]) -> "ScenarioConfig":
        """Return a copy with per-section overrides, e.g.
        ``cfg.replace(environment={"grid_gwp": 0.0})``."""
        return scenario_from_dict(sections, base=self)


def _coerce(cls: type, name: str, value: Any, section: str) -> Any:
    default = getattr(cls(), name)
    if isinstance(default, tuple):
        if not isinstance(value, (list, tuple)):
            raise ConfigError("expected a list", field=f"{section}.{name}")
        return tuple(float(v) for v in value)
    if isinstance(default, bool):
        return bool(value)
    if isinstance(default, int):
        if isinstance(value, float) and not value.is_integer():
            raise ConfigError("expected an integer", field=f"{section}.{name}")
        return int(value)
    if isinstance(default, float):
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"expected a number, got {value!r}", field=f"{section}.{name}")
    return value


def scenario_from_dict(data: dict[str, Any] | None,
                       base: ScenarioConfig | None = None) -> ScenarioConfig:
    """Merge a nested mapping over ``base`` (defaults if None) and validate."""
    base = base or ScenarioConfig()
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError("top level must be a mapping")
    updates = {}
    for section, values in data.items():
        if section not in _SECTIONS:
            raise ConfigError("unknown section", field=section)
        cls = _SECTIONS[section]
        if values is None:
            continue
        if not isinstance(values, dict):
            raise ConfigError("section must be a mapping", field=section)
        known = {f.name for f in fields(cls)}
        kw = {}
        for k, v in values.items():
            if k not in known:
                raise ConfigError("unknown key", field=f"{section}.{k}")
            kw[k] = _coerce(cls, k, v, section)
        updates[section] = dataclasses.replace(getattr(base, section), **kw)
    return dataclasses.replace(base, **updates).validate()


def scenario_to_dict(cfg: ScenarioConfig) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for section in _SECTIONS:
        sec = getattr(cfg, section)
        out[section] = {f.name: (list(v) if isinstance(v := getattr(sec, f.name), tuple) else v)
                        for f in fields(sec)}
    return out


def load_scenario(path: str | Path | None = None) -> ScenarioConfig:
    """Load a YAML scenario file; ``None`` or an empty file gives the defaults."""
    if path is None:
        return ScenarioConfig().validate()
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse scenario file: {exc}") from exc
    return scenario_from_dict(data)


def dump_scenario(cfg: ScenarioConfig, path: str | Path | None = None) -> str:
    text = yaml.safe_dump(scenario_to_dict(cfg), sort_keys=False)
    if path is not None:
        Path(path).write_text(text)
    return text


def fingerprint(cfg: ScenarioConfig) -> str:
    """Stable short hash of the configuration, embedded in every report."""
    blob = json.dumps(scenario_to_dict(cfg), sort_keys=True, default=repr).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
