"""Rotor noise: Gutin-Deming tonal hover noise and SKM broadband noise.

The tonal model keeps the first blade-passage harmonic of the steady
thrust and torque dipoles. The broadband model is the Schlegel-King-Mull
vortex-noise correlation in its original imperial form. Both are A-weighted
at their characteristic frequency by the analytic A-curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import jv

from .config import AcousticsConfig, ScenarioConfig

__all__ = [
    "AcousticState",
    "a_weighting",
    "hover_spl_tonal",
    "broadband_spl_skm",
    "blade_geometry",
    "acoustic_state",
]

FT_PER_M = 3.280839895

# IEC 61672-1 analytic A-weighting poles [Hz] and 1 kHz normalization [dB]
_A_POLES = (20.598997, 107.65265, 737.86223, 12194.217)
_A_NORM = 2.0


@dataclass(frozen=True)
class AcousticState:
    spl_hover: float  # dB(A) at the hover observer
    spl_climb: float
    spl_cruise: float
    tip_speed_hover: float  # m/s
    tip_speed_climb: float
    tip_speed_cruise: float
    blade_area_lift: float  # m^2, one rotor
    blade_area_cruise: float
    blade_cl_climb: float
    blade_cl_cruise: float
    bpf_hover: float  # Hz


def a_weighting(f: float) -> float:
    """A-weighting correction [dB] at frequency ``f`` [Hz]."""
    if f <= 0:
        return -math.inf
    p1, p2, p3, p4 = _A_POLES
    f2 = f * f
    ra = (p4 * p4 * f2 * f2) / ((f2 + p1 * p1) * math.sqrt((f2 + p2 * p2) * (f2 + p3 * p3))
                                * (f2 + p4 * p4))
    return 20.0 * math.log10(ra) + _A_NORM


def _spl(p_rms: float, p_ref: float) -> float:
    return 20.0 * math.log10(p_rms / p_ref)


def hover_spl_tonal(thrust: float, power: float, radius: float, rpm: float, blades: int,
                    observer_distance: float, cfg: AcousticsConfig, n_rotors: int = 1,
                    weighted: bool = True) -> float:
    """First-harmonic Gutin-Deming SPL [dB(A)] of ``n_rotors`` identical rotors.

    ``thrust`` [N] and shaft ``power`` [kW] are per rotor. The observer sits at
    ``cfg.observer_angle_deg`` from the forward thrust axis.
    """
    if rpm <= 0 or observer_distance <= 0:
        raise ValueError("rpm and observer distance must be positive")
    omega = rpm * 2.0 * math.pi / 60.0
    c = cfg.speed_of_sound
    r_e = cfg.effective_radius_fraction * radius
    theta = math.radians(cfg.observer_angle_deg)
    torque = power * 1000.0 / omega
    m_b = blades  # first harmonic: m = 1
    loading = -thrust * math.cos(theta) + torque * c / (omega * r_e * r_e)
    bessel = jv(m_b, m_b * omega * r_e * math.sin(theta) / c)
    p_rms = m_b * omega / (2.0 * math.sqrt(2.0) * math.pi * c * observer_distance) * abs(loading * bessel)
    p_rms = max(p_rms, 1e-30)
    spl = _spl(p_rms, cfg.reference_pressure) + 10.0 * math.log10(n_rotors)
    if weighted:
        spl += a_weighting(m_b * rpm / 60.0)
    return spl + cfg.tonal_calibration_db


def broadband_spl_skm(blade_area: float, tip_speed: float, blade_cl: float,
                      observer_distance: float, cfg: AcousticsConfig,
                      a_weight_frequency: float | None = None) -> float:
    """Schlegel-King-Mull vortex noise [dB] from total blade area [m^2],
    tip speed [m/s], mean blade lift coefficient and distance [m].

    The 0.7-radius speed is the reference velocity. Without
    ``a_weight_frequency`` the level is unweighted, so the V^6 and
    inverse-square laws hold exactly.
    """
    if tip_speed <= 0 or blade_area <= 0:
        raise ValueError("tip speed and blade area must be positive")
    if observer_distance <= 0:
        raise ValueError("observer distance must be positive")
    if blade_cl <= 0:
        raise ValueError("blade lift coefficient must be positive")
    area_ft2 = blade_area * FT_PER_M ** 2
    v07 = cfg.skm_reference_radius_fraction * tip_speed * FT_PER_M
    r_ft = observer_distance * FT_PER_M
    spl = (10.0 * math.log10(cfg.skm_constant * area_ft2 * v07 ** 6 / cfg.skm_pressure_ref_sq)
           + 20.0 * math.log10(blade_cl / cfg.skm_reference_cl)
           - 20.0 * math.log10(r_ft / cfg.skm_reference_distance_ft))
    if a_weight_frequency is not None:
        spl += a_weighting(a_weight_frequency)
    return spl


def blade_geometry(radius: float, blades: int, solidity: float) -> tuple[float, float]:
    """(total blade planform area [m^2], blade chord [m]) of one rotor."""
    area = solidity * math.pi * radius ** 2
    return area, area / (blades * radius)


def _vortex_peak_frequency(tip_speed: float, chord: float, cfg: AcousticsConfig) -> float:
    thickness = cfg.blade_thickness_ratio * chord
    return cfg.skm_strouhal * cfg.skm_reference_radius_fraction * tip_speed / thickness


def _broadband_phase(phase, radius: float, blades: int, solidity: float, rho: float,
                     distance: float, cfg: AcousticsConfig) -> tuple[float, float, float]:
    area, chord = blade_geometry(radius, blades, solidity)
    omega = phase.rpm * 2.0 * math.pi / 60.0
    v_tip = omega * radius
    # blade-element mean lift coefficient, CL = 6 C_T / sigma
    c_t = phase.thrust_per_rotor / (rho * math.pi * radius ** 2 * v_tip ** 2)
    cl = 6.0 * c_t / solidity
    spl = broadband_spl_skm(area, v_tip, cl, distance, cfg,
                            a_weight_frequency=_vortex_peak_frequency(v_tip, chord, cfg))
    return spl, v_tip, cl


def acoustic_state(mission, design, cfg: ScenarioConfig) -> AcousticState:
    """SPL of every phase for a flown mission (see :func:`mission.fly_mission`)."""
    ac, pr, ms = cfg.acoustics, cfg.propulsion, cfg.mission
    hover = mission.hover
    p_rotor = hover.power * pr.eta_hover / pr.n_lift  # shaft power per rotor
    spl_h = hover_spl_tonal(hover.thrust_per_rotor, p_rotor, design.r_hover, hover.rpm,
                            pr.blades_lift, ac.hover_observer_distance, ac, n_rotors=pr.n_lift)
    omega_h = hover.rpm * 2.0 * math.pi / 60.0
    spl_cl, vt_cl, cl_cl = _broadband_phase(mission.climb, design.r_cruise, pr.blades_cruise,
                                            pr.solidity, ms.air_density_sl,
                                            ac.climb_observer_distance, ac)
    spl_cr, vt_cr, cl_cr = _broadband_phase(mission.cruise, design.r_cruise, pr.blades_cruise,
                                            pr.solidity, ms.air_density_cruise,
                                            ac.cruise_observer_distance, ac)
    spl_cl += 10.0 * math.log10(pr.n_cruise)
    spl_cr += 10.0 * math.log10(pr.n_cruise)
    return AcousticState(
        spl_hover=spl_h, spl_climb=spl_cl, spl_cruise=spl_cr,
        tip_speed_hover=omega_h * design.r_hover, tip_speed_climb=vt_cl, tip_speed_cruise=vt_cr,
        blade_area_lift=blade_geometry(design.r_hover, pr.blades_lift, pr.solidity)[0],
        blade_area_cruise=blade_geometry(design.r_cruise, pr.blades_cruise, pr.solidity)[0],
        blade_cl_climb=cl_cl, blade_cl_cruise=cl_cr,
        bpf_hover=pr.blades_lift * hover.rpm / 60.0)
