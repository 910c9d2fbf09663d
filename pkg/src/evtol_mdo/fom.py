"""Transportation figure of merit across modes.

Each mode's per-person trip cost, CO2e and door-to-door time over the same
straight-line distance are min-max rated onto [1, 10] (lowest value best)
and combined with a weight vector.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .config import ScenarioConfig

__all__ = [
    "TransportMode",
    "FomRow",
    "FomTable",
    "ModesCsvError",
    "MODES_COLUMNS",
    "load_modes",
    "default_modes",
    "mode_trip_values",
    "rate",
    "fom",
    "evtol_trip_values",
    "fom_table",
]

MODES_COLUMNS = ("name", "load_factor", "speed_kmh", "cost_per_skm", "co2_per_skm", "circuity")
CRITERIA = ("cost", "co2", "time")


class ModesCsvError(ValueError):
    """The transport-mode CSV is malformed."""


@dataclass(frozen=True)
class TransportMode:
    name: str
    load_factor: float
    speed_kmh: float
    cost_per_skm: float
    co2_per_skm: float
    circuity: float

    def __post_init__(self):
        if self.speed_kmh <= 0:
            raise ValueError(f"{self.name}: speed must be positive")
        if self.circuity < 1:
            raise ValueError(f"{self.name}: circuity must be >= 1")

    @property
    def label(self) -> str:
        return f"{self.name} ({100 * self.load_factor:g}%)"


@dataclass(frozen=True)
class FomRow:
    label: str
    cost: float  # EUR per person
    co2: float  # kg per person
    time: float  # h
    r_cost: float
    r_co2: float
    r_time: float
    fom: float
    rank: int


@dataclass(frozen=True)
class FomTable:
    rows: tuple[FomRow, ...]
    weights: tuple[float, float, float]
    distance_km: float

    def row(self, label: str) -> FomRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rank", "label", "cost_eur", "co2_kg", "time_h",
                    "r_cost", "r_co2", "r_time", "fom"])
        for r in self.rows:
            w.writerow([r.rank, r.label, f"{r.cost:.6g}", f"{r.co2:.6g}", f"{r.time:.6g}",
                        f"{r.r_cost:.4f}", f"{r.r_co2:.4f}", f"{r.r_time:.4f}", f"{r.fom:.4f}"])
        return buf.getvalue()


def _parse_modes(text: str, source: str) -> list[TransportMode]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != MODES_COLUMNS:
        raise ModesCsvError(f"{source}: expected columns {','.join(MODES_COLUMNS)}, "
                            f"got {reader.fieldnames}")
    modes = []
    for i, rec in enumerate(reader, start=2):
        try:
            modes.append(TransportMode(
                name=rec["name"].strip(),
                **{k: float(rec[k]) for k in MODES_COLUMNS[1:]}))
        except (TypeError, ValueError) as exc:
            raise ModesCsvError(f"{source} line {i}: {exc}") from exc
    if not modes:
        raise ModesCsvError(f"{source}: no modes")
    return modes


def load_modes(path: str | Path) -> list[TransportMode]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ModesCsvError(f"cannot read {path}: {exc}") from exc
    return _parse_modes(text, str(path))


def default_modes() -> list[TransportMode]:
    text = resources.files("evtol_mdo").joinpath("data/transport_modes.csv").read_text()
    return _parse_modes(text, "transport_modes.csv")


def mode_trip_values(mode: TransportMode, straight_distance_km: float) -> tuple[float, float, float]:
    """(cost EUR, CO2e kg, time h) per person over the circuitous route."""
    if straight_distance_km <= 0:
        raise ValueError("distance must be positive")
    d = straight_distance_km * mode.circuity
    return d * mode.cost_per_skm, d * mode.co2_per_skm, d / mode.speed_kmh


def rate(values) -> np.ndarray:
    """Min-max rating: pool minimum -> 10, pool maximum -> 1.

    A degenerate pool (all values equal) rates every entry 10.
    """
    x = np.asarray(values, dtype=float)
    lo, hi = x.min(), x.max()
    if hi == lo:
        return np.full_like(x, 10.0)
    return ((x - lo) - 10.0 * (x - hi)) / (hi - lo)


def fom(ratings, weights) -> np.ndarray:
    """Weighted sum over criteria; ``ratings`` has shape (..., 3)."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (3,):
        raise ValueError("expected three weights (cost, CO2e, time)")
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
        raise ValueError(f"weights must be non-negative and sum to 1, got {tuple(w)}")
    return np.asarray(ratings, dtype=float) @ w


def evtol_trip_values(toc: float, gwp_cycle: float, t_flight: float,
                      cfg: ScenarioConfig) -> tuple[float, float, float]:
    """Per-person (cost, CO2e, time h) for one eVTOL flight.

    Flight cost and emissions are shared by the expected occupants: seats
    times the load factor, or all seats when ``fom.pax_basis`` is "seats".
    """
    ops = cfg.operations
    pax = ops.seats * (ops.load_factor if cfg.fom.pax_basis == "load_factor" else 1.0)
    return toc / pax, gwp_cycle / pax, t_flight / 3600.0


def fom_table(modes, distance_km: float, weights, extra: dict[str, tuple] | None = None) -> FomTable:
    """Rate every mode plus ``extra`` entries (label -> (cost, co2, time))."""
    labels, vals = [], []
    for m in modes:
        labels.append(m.label)
        vals.append(mode_trip_values(m, distance_km))
    for label, v in (extra or {}).items():
        labels.append(label)
        vals.append(tuple(float(t) for t in v))
    if not vals:
        raise ValueError("empty transport pool")
    x = np.array(vals, dtype=float)
    r = np.column_stack([rate(x[:, k]) for k in range(3)])
    scores = fom(r, weights)
    # stable ordering: score descending, then label
    order = sorted(range(len(labels)), key=lambda i: (-round(scores[i], 12), labels[i]))
    rows = []
    for rank, i in enumerate(order, start=1):
        rows.append(FomRow(label=labels[i], cost=x[i, 0], co2=x[i, 1], time=x[i, 2],
                           r_cost=r[i, 0], r_co2=r[i, 1], r_time=r[i, 2], fom=float(scores[i]),
                           rank=rank))
    return FomTable(rows=tuple(rows), weights=tuple(float(w) for w in weights),
                    distance_km=distance_km)
