"""The six-variable design vector and its [0, 1] normalization."""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from .config import DESIGN_VARIABLES, DesignBounds

__all__ = ["DesignVector", "BoundsError", "normalize", "denormalize"]


class BoundsError(ValueError):
    """A design variable lies outside its bounds."""


@dataclass(frozen=True)
class DesignVector:
    """Wing span and chord [m], pusher and lifter rotor radii [m], battery
    pack energy density [Wh/kg] and charging C-rate [1/h]."""

    span: float
    chord: float
    r_cruise: float
    r_hover: float
    rho_bat: float
    c_charge: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    def to_dict(self) -> dict[str, float]:
        return {f.name: float(getattr(self, f.name)) for f in fields(self)}

    @classmethod
    def from_array(cls, x) -> "DesignVector":
        x = np.asarray(x, dtype=float)
        if x.shape != (6,):
            raise ValueError(f"expected 6 design variables, got shape {x.shape}")
        return cls(*(float(v) for v in x))

    @classmethod
    def from_dict(cls, d: dict) -> "DesignVector":
        missing = [n for n in DESIGN_VARIABLES if n not in d]
        if missing:
            raise ValueError(f"missing design variables: {missing}")
        extra = set(d) - set(DESIGN_VARIABLES)
        if extra:
            raise ValueError(f"unknown design variables: {sorted(extra)}")
        return cls(**{n: float(d[n]) for n in DESIGN_VARIABLES})

    def check_bounds(self, bounds: DesignBounds, tol: float = 1e-9) -> None:
        for n in DESIGN_VARIABLES:
            lo, hi = getattr(bounds, n)
            v = getattr(self, n)
            span = hi - lo
            if not (lo - tol * span <= v <= hi + tol * span):
                raise BoundsError(f"{n}={v:g} outside [{lo:g}, {hi:g}]")


def normalize(design: DesignVector, bounds: DesignBounds) -> np.ndarray:
    lo, hi = map(np.asarray, bounds.as_arrays())
    return (design.as_array() - lo) / (hi - lo)


def denormalize(z, bounds: DesignBounds) -> DesignVector:
    lo, hi = map(np.asarray, bounds.as_arrays())
    return DesignVector.from_array(lo + np.asarray(z, dtype=float) * (hi - lo))
