"""Momentum-theory power, force-balance speeds and the sizing-mission energy.

Phases: hover (take-off and landing, fixed total time), a straight climb at
the configured angle (angle of attack = pitch = flight-path angle), and
cruise at altitude over the remaining horizontal distance. Descent earns no
distance credit and consumes no energy. The reserve is flown at cruise power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .aero import WingAero, drag_coefficient, lift_coefficient, wing_aero
from .config import MissionProfile, ScenarioConfig
from .design import DesignVector

__all__ = [
    "InfeasibleMissionError",
    "PhaseState",
    "EnergyBudget",
    "MissionResult",
    "induced_velocity",
    "hover_power",
    "cruise_speed",
    "cruise_power",
    "rotor_rpm",
    "hover_state",
    "climb_state",
    "cruise_state",
    "mission_energy",
    "depth_of_discharge",
    "fly_mission",
]


class InfeasibleMissionError(ValueError):
    """The mission geometry cannot be flown (e.g. climb longer than the trip)."""


@dataclass(frozen=True)
class PhaseState:
    phase: str
    power: float  # kW, electrical
    speed: float  # m/s
    duration: float  # s
    thrust: float  # N, total
    thrust_per_rotor: float  # N
    rpm: float
    distance: float  # m, horizontal
    lift_coefficient: float = 0.0
    lift_to_drag: float = 0.0

    @property
    def energy(self) -> float:
        """kWh."""
        return self.power * self.duration / 3600.0


@dataclass(frozen=True)
class EnergyBudget:
    e_trip: float  # kWh
    e_res: float
    e_usable: float
    e_design: float
    dod: float
    e_usable_specific: float  # Wh/kg of pack


@dataclass(frozen=True)
class MissionResult:
    hover: PhaseState
    climb: PhaseState
    cruise: PhaseState
    budget: EnergyBudget
    aero: WingAero

    @property
    def phases(self) -> tuple[PhaseState, PhaseState, PhaseState]:
        return (self.hover, self.climb, self.cruise)

    @property
    def flight_time(self) -> float:
        """s, hover + climb + cruise."""
        return sum(p.duration for p in self.phases)

    def lift_motor_power(self, n_lift: int) -> float:
        """Required power of one lifting propulsor [kW]."""
        return self.hover.power / n_lift

    def cruise_motor_power(self, n_cruise: int) -> float:
        return max(self.climb.power, self.cruise.power) / n_cruise


def induced_velocity(thrust: float, disk_area: float, rho: float, v_axial: float = 0.0) -> float:
    """Actuator-disk induced velocity with axial inflow ``v_axial`` [m/s]."""
    if thrust <= 0:
        return 0.0
    half = 0.5 * v_axial
    return -half + math.sqrt(half * half + thrust / (2.0 * rho * disk_area))


def hover_power(m_mtom: float, r_hover: float, n_lift: int, rho: float, eta_hover: float,
                g: float = MissionProfile.gravity) -> float:
    """Total electrical hover power [kW] of ``n_lift`` equal rotors."""
    if m_mtom <= 0:
        return 0.0
    t_rotor = m_mtom * g / n_lift
    area = math.pi * r_hover ** 2
    p_ideal = t_rotor ** 1.5 / math.sqrt(2.0 * rho * area)
    return n_lift * p_ideal / eta_hover / 1000.0


def cruise_speed(m_mtom: float, aero: WingAero, alpha_cruise: float, rho_cruise: float,
                 g: float = MissionProfile.gravity) -> float:
    """Level-flight speed at which lift equals weight at ``alpha_cruise`` [rad]."""
    cl = lift_coefficient(aero, alpha_cruise)
    if cl <= 0:
        raise InfeasibleMissionError(f"non-positive cruise lift coefficient {cl:.3f}")
    return math.sqrt(2.0 * m_mtom * g / (rho_cruise * aero.area * cl))


def cruise_power(thrust: float, v: float, eta: float, rho: float,
                 disk_area: float | None = None) -> float:
    """Electrical power [kW] to deliver ``thrust`` at speed ``v``.

    With a ``disk_area`` the ideal power includes the momentum-theory induced
    velocity of the propulsor; without one it is the parasite limit T V / eta.
    """
    v_i = 0.0 if disk_area is None else induced_velocity(thrust, disk_area, rho, v)
    return thrust * (v + v_i) / eta / 1000.0


def rotor_rpm(thrust: float, radius: float, rho: float, thrust_coefficient: float) -> float:
    """Rotational speed from T = C_T rho (pi R^2) (Omega R)^2."""
    if thrust <= 0:
        return 0.0
    omega = math.sqrt(thrust / (thrust_coefficient * rho * math.pi * radius ** 4))
    return omega * 60.0 / (2.0 * math.pi)


def hover_state(m_mtom: float, design: DesignVector, cfg: ScenarioConfig) -> PhaseState:
    m, pr = cfg.mission, cfg.propulsion
    rho = m.air_density_sl
    thrust = m_mtom * m.gravity
    t_rotor = thrust / pr.n_lift
    return PhaseState(
        phase="hover",
        power=hover_power(m_mtom, design.r_hover, pr.n_lift, rho, pr.eta_hover, m.gravity),
        speed=0.0,
        duration=m.hover_time_total,
        thrust=thrust,
        thrust_per_rotor=t_rotor,
        rpm=rotor_rpm(t_rotor, design.r_hover, rho, pr.thrust_coefficient_lift),
        distance=0.0,
    )


def climb_state(m_mtom: float, aero: WingAero, design: DesignVector,
                cfg: ScenarioConfig) -> PhaseState:
    m, pr = cfg.mission, cfg.propulsion
    theta = math.radians(m.climb_angle_deg)
    rho = m.air_density_sl
    weight = m_mtom * m.gravity
    cl = lift_coefficient(aero, theta)
    if cl <= 0:
        raise InfeasibleMissionError(f"non-positive climb lift coefficient {cl:.3f}")
    v = math.sqrt(2.0 * weight * math.cos(theta) / (rho * aero.area * cl))
    cd = drag_coefficient(aero, cl)
    drag = 0.5 * rho * v * v * aero.area * cd
    thrust = weight * math.sin(theta) + drag
    t_rotor = thrust / pr.n_cruise
    area = math.pi * design.r_cruise ** 2
    power = pr.n_cruise * cruise_power(t_rotor, v, pr.eta_climb, rho, area)
    duration = m.cruise_altitude / (v * math.sin(theta))
    distance = m.cruise_altitude / math.tan(theta)
    if distance > m.trip_distance:
        raise InfeasibleMissionError(
            f"climb distance {distance:.0f} m exceeds trip distance {m.trip_distance:.0f} m")
    return PhaseState(
        phase="climb", power=power, speed=v, duration=duration, thrust=thrust,
        thrust_per_rotor=t_rotor,
        rpm=rotor_rpm(t_rotor, design.r_cruise, rho, pr.thrust_coefficient_cruise),
        distance=distance, lift_coefficient=cl, lift_to_drag=cl / cd)


def cruise_state(m_mtom: float, aero: WingAero, design: DesignVector, cfg: ScenarioConfig,
                 distance: float) -> PhaseState:
    m, pr = cfg.mission, cfg.propulsion
    if distance < 0:
        raise InfeasibleMissionError("negative cruise distance")
    rho = m.air_density_cruise
    alpha = math.radians(cfg.aero.alpha_cruise_deg)
    v = cruise_speed(m_mtom, aero, alpha, rho, m.gravity)
    cl = lift_coefficient(aero, alpha)
    cd = drag_coefficient(aero, cl)
    drag = 0.5 * rho * v * v * aero.area * cd
    t_rotor = drag / pr.n_cruise
    area = math.pi * design.r_cruise ** 2
    power = pr.n_cruise * cruise_power(t_rotor, v, pr.eta_cruise, rho, area)
    return PhaseState(
        phase="cruise", power=power, speed=v, duration=distance / v, thrust=drag,
        thrust_per_rotor=t_rotor,
        rpm=rotor_rpm(t_rotor, design.r_cruise, rho, pr.thrust_coefficient_cruise),
        distance=distance, lift_coefficient=cl, lift_to_drag=cl / cd)


def mission_energy(states, reserve_power: float, cfg: ScenarioConfig,
                   rho_bat: float) -> EnergyBudget:
    """Trip energy as the sum of phase energies plus the cruise-power reserve."""
    e_trip = sum(s.energy for s in states)
    e_res = reserve_power * cfg.mission.reserve_time_min / 60.0
    e_usable = e_trip + e_res
    frac = cfg.battery.usable_fraction
    e_design = e_usable / frac
    return EnergyBudget(
        e_trip=e_trip, e_res=e_res, e_usable=e_usable, e_design=e_design,
        dod=e_trip / e_design if e_design > 0 else 0.0,
        e_usable_specific=frac * rho_bat)


def depth_of_discharge(budget: EnergyBudget) -> float:
    if budget.e_design <= 0:
        return 0.0
    return budget.e_trip / budget.e_design


def fly_mission(m_mtom: float, design: DesignVector, cfg: ScenarioConfig) -> MissionResult:
    """Evaluate every phase of the sizing mission at take-off mass ``m_mtom``."""
    aero = wing_aero(design.span, design.chord, cfg.aero)
    hover = hover_state(m_mtom, design, cfg)
    climb = climb_state(m_mtom, aero, design, cfg)
    cruise = cruise_state(m_mtom, aero, design, cfg, cfg.mission.trip_distance - climb.distance)
    budget = mission_energy((hover, climb, cruise), cruise.power, cfg, design.rho_bat)
    return MissionResult(hover=hover, climb=climb, cruise=cruise, budget=budget, aero=aero)
