"""Finite-wing lift and drag (linear lift curve, parabolic drag polar)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import AeroConfig

__all__ = [
    "OutOfModelError",
    "WingAero",
    "wing_aero",
    "lift_coefficient",
    "drag_coefficient",
    "lift_to_drag",
    "dynamic_force",
    "lift_force",
    "drag_force",
    "best_lift_coefficient",
]


class OutOfModelError(ValueError):
    """Angle of attack outside the linear pre-stall range."""


@dataclass(frozen=True)
class WingAero:
    span: float
    chord: float
    oswald: float
    airfoil_lift_slope: float
    cl0: float
    cd_min: float
    alpha_max: float = math.radians(AeroConfig.alpha_max_deg)

    def __post_init__(self):
        if self.span <= 0 or self.chord <= 0:
            raise ValueError("span and chord must be positive")
        if not 0 < self.oswald <= 1:
            raise ValueError("Oswald factor must be in (0, 1]")
        if self.cd_min <= 0:
            raise ValueError("cd_min must be positive")

    @property
    def area(self) -> float:
        return self.span * self.chord

    @property
    def aspect_ratio(self) -> float:
        return self.span / self.chord

    @property
    def induced_factor(self) -> float:
        """1 / (pi AR e)."""
        return 1.0 / (math.pi * self.aspect_ratio * self.oswald)

    @property
    def lift_slope(self) -> float:
        a0 = self.airfoil_lift_slope
        return a0 / (1.0 + a0 * self.induced_factor)


def wing_aero(span: float, chord: float, cfg: AeroConfig) -> WingAero:
    return WingAero(span=span, chord=chord, oswald=cfg.oswald,
                    airfoil_lift_slope=cfg.airfoil_lift_slope, cl0=cfg.cl0,
                    cd_min=cfg.cd_min, alpha_max=math.radians(cfg.alpha_max_deg))


def lift_coefficient(aero: WingAero, alpha: float) -> float:
    """Finite-wing lift coefficient at angle of attack ``alpha`` [rad]."""
    if abs(alpha) > aero.alpha_max + 1e-12:
        raise OutOfModelError(
            f"alpha={math.degrees(alpha):.2f} deg beyond linear range "
            f"(+/-{math.degrees(aero.alpha_max):.1f} deg)")
    return aero.lift_slope * alpha + aero.cl0


def drag_coefficient(aero: WingAero, cl: float) -> float:
    return aero.cd_min + cl * cl * aero.induced_factor


def lift_to_drag(aero: WingAero, cl: float) -> float:
    return cl / drag_coefficient(aero, cl)


def best_lift_coefficient(aero: WingAero) -> float:
    """CL maximizing L/D for the parabolic polar."""
    return math.sqrt(aero.cd_min / aero.induced_factor)


def dynamic_force(aero: WingAero, rho: float, v: float, coefficient: float) -> float:
    """q S C for either lift or drag coefficient."""
    if v < 0:
        raise ValueError("speed must be non-negative")
    if rho <= 0:
        raise ValueError("density must be positive")
    return 0.5 * rho * v * v * aero.area * coefficient


lift_force = dynamic_force
drag_force = dynamic_force
