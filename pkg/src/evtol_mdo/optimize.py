"""Multi-start SLSQP over the normalized design space.

Objective and constraints come from :func:`pipeline.evaluate`, the same
function used for reports. Gradients are central finite differences on the
[0, 1]^6 variables; one cached evaluation serves both objective and
constraints. Model failures become a penalty value with every constraint set
to -1, so a line search that strays into an unflyable region backs off
instead of crashing.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc

from .config import DESIGN_VARIABLES, ScenarioConfig
from .design import DesignVector, denormalize, normalize
from .pipeline import (CONSTRAINT_NAMES, OBJECTIVES, EvaluationError, FullReport,
                       constraint_scales, evaluate, objective_value)

__all__ = [
    "OptimizationProblem",
    "StartRecord",
    "OptimizationResult",
    "OptimizationFailure",
    "NormalizedProblem",
    "optimize",
    "sweep",
    "latin_hypercube_audit",
    "fd_gradient",
]

# objective -> (sign for minimization, scale)
_SCALING = {
    "max_profit": (-1.0, 1e6),
    "min_toc": (1.0, 100.0),
    "min_gwp": (1.0, 100.0),
    "max_fom": (-1.0, 10.0),
}


class OptimizationFailure(RuntimeError):
    """No start reached a feasible point."""

    def __init__(self, message: str, starts):
        super().__init__(message)
        self.starts = starts


@dataclass(frozen=True)
class OptimizationProblem:
    objective: str
    starts: int = 16
    seed: int = 0
    fd_step: float = 1e-4
    ftol: float = 1e-8
    maxiter: int = 200
    feasibility_tol: float = 1e-6

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}; "
                             f"expected one of {sorted(OBJECTIVES)}")
        if self.starts < 1:
            raise ValueError("need at least one start")

    @classmethod
    def from_config(cls, objective: str, cfg: ScenarioConfig, starts: int | None = None,
                    seed: int | None = None) -> "OptimizationProblem":
        oc = cfg.optimizer
        return cls(objective=objective, starts=oc.starts if starts is None else starts,
                   seed=oc.seed if seed is None else seed, fd_step=oc.fd_step, ftol=oc.ftol,
                   maxiter=oc.maxiter, feasibility_tol=oc.feasibility_tol)


@dataclass(frozen=True)
class StartRecord:
    index: int
    z_sample: tuple[float, ...]  # drawn start
    z0: tuple[float, ...]  # start actually used (restored if unevaluable)
    z: tuple[float, ...]
    objective: float  # natural sense; nan if the end point is not evaluable
    feasible: bool
    max_violation: float  # normalized units
    iterations: int
    nfev: int
    status: int
    message: str
    tag: str = ""


@dataclass(frozen=True)
class OptimizationResult:
    problem: OptimizationProblem
    design: DesignVector
    objective: float
    constraints: dict[str, float]
    feasible: bool
    best_start: int
    iterations: int
    nfev: int
    status: int
    message: str
    active_constraints: tuple[str, ...]
    active_bounds: tuple[str, ...]
    projected_gradient_norm: float
    starts: tuple[StartRecord, ...]
    report: FullReport = field(repr=False, compare=False)


class NormalizedProblem:
    """Objective/constraint functions of the normalized vector with a cache."""

    def __init__(self, objective: str, cfg: ScenarioConfig, fd_step: float = 1e-4):
        self.objective = objective
        self.cfg = cfg
        self.sign, self.scale = _SCALING[objective]
        self.g_scale = constraint_scales(cfg)
        self.penalty = cfg.optimizer.infeasible_penalty
        self.fd_step = fd_step
        self._cache: dict[bytes, tuple[float, np.ndarray, str]] = {}
        self._jac_cache: dict[bytes, tuple[np.ndarray, np.ndarray]] = {}
        self.nfev = 0

    def _eval(self, z) -> tuple[float, np.ndarray, str]:
        z = np.asarray(z, dtype=float)
        key = z.tobytes()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.nfev += 1
        try:
            rep = evaluate(denormalize(z, self.cfg.bounds), self.cfg, check_bounds=False)
            f = self.sign * objective_value(rep, self.objective) / self.scale
            g = np.array([rep.constraints[n] for n in CONSTRAINT_NAMES]) / self.g_scale
            out = (f, g, "")
        except EvaluationError as exc:
            out = (self.penalty, -np.ones(len(CONSTRAINT_NAMES)), exc.tag)
        if len(self._cache) > 4096:
            self._cache.clear()
        self._cache[key] = out
        return out

    def fun(self, z) -> float:
        return self._eval(z)[0]

    def cons(self, z) -> np.ndarray:
        return self._eval(z)[1]

    def _jacobians(self, z) -> tuple[np.ndarray, np.ndarray]:
        z = np.asarray(z, dtype=float)
        key = z.tobytes()
        hit = self._jac_cache.get(key)
        if hit is not None:
            return hit
        h = self.fd_step
        n, m = z.size, len(CONSTRAINT_NAMES)
        df, dg = np.empty(n), np.empty((m, n))
        for i in range(n):
            zp, zm = z.copy(), z.copy()
            zp[i] += h
            zm[i] -= h
            fp, gp, _ = self._eval(zp)
            fm, gm, _ = self._eval(zm)
            df[i] = (fp - fm) / (2 * h)
            dg[:, i] = (gp - gm) / (2 * h)
        if len(self._jac_cache) > 1024:
            self._jac_cache.clear()
        self._jac_cache[key] = (df, dg)
        return df, dg

    def fun_jac(self, z) -> np.ndarray:
        return self._jacobians(z)[0]

    def cons_jac(self, z) -> np.ndarray:
        return self._jacobians(z)[1]


def fd_gradient(objective: str, design: DesignVector, cfg: ScenarioConfig,
                step: float) -> np.ndarray:
    """Central-difference gradient of the scaled objective in normalized variables."""
    prob = NormalizedProblem(objective, cfg, fd_step=step)
    return prob.fun_jac(normalize(design, cfg.bounds))


def _start_points(problem: OptimizationProblem) -> np.ndarray:
    sampler = qmc.LatinHypercube(d=len(DESIGN_VARIABLES), seed=problem.seed)
    return sampler.random(problem.starts)


def _restore_start(prob: NormalizedProblem, z0: np.ndarray) -> np.ndarray:
    """Pull an unevaluable start toward the configured anchor until the mass
    loop closes (much of the box has no MTOM fixed point)."""
    anchor = np.asarray(prob.cfg.optimizer.restore_anchor, dtype=float)
    for t in (0.25, 0.5, 0.75, 1.0):
        z = z0 + t * (anchor - z0)
        if not prob._eval(z)[2]:
            return z
    return z0


def _run_start(args) -> tuple[StartRecord, np.ndarray]:
    index, z_sample, problem, cfg = args
    prob = NormalizedProblem(problem.objective, cfg, fd_step=problem.fd_step)
    z0 = np.asarray(z_sample, dtype=float)
    if prob._eval(z0)[2]:
        z0 = _restore_start(prob, z0)
    f0, g0, tag0 = prob._eval(z0)
    res = minimize(prob.fun, z0, jac=prob.fun_jac, method="SLSQP",
                   bounds=[(0.0, 1.0)] * len(z0),
                   constraints=[{"type": "ineq", "fun": prob.cons, "jac": prob.cons_jac}],
                   options={"ftol": problem.ftol, "maxiter": problem.maxiter})
    z = np.clip(res.x, 0.0, 1.0)
    f, g, tag = prob._eval(z)
    viol = float(max(0.0, -g.min()))
    # never return worse than a feasible start
    if (not tag0 and g0.min() >= -problem.feasibility_tol
            and (tag or viol > problem.feasibility_tol or f0 < f)):
        z, f, g, tag = np.asarray(z0, dtype=float), f0, g0, tag0
        viol = float(max(0.0, -g.min()))
    feasible = not tag and viol <= problem.feasibility_tol
    sign, scale = _SCALING[problem.objective]
    rec = StartRecord(index=index, z_sample=tuple(float(v) for v in z_sample),
                      z0=tuple(float(v) for v in z0), z=tuple(float(v) for v in z),
                      objective=float("nan") if tag else float(sign * f * scale),
                      feasible=feasible, max_violation=viol, iterations=int(res.nit),
                      nfev=prob.nfev, status=int(res.status), message=str(res.message), tag=tag)
    return rec, z


def optimize(problem: OptimizationProblem, cfg: ScenarioConfig,
             workers: int = 1) -> OptimizationResult:
    """Run every start and return the best feasible end point.

    ``workers > 1`` runs starts in separate processes; results are gathered
    in start order, so the answer does not depend on scheduling.
    """
    z0s = _start_points(problem)
    jobs = [(i, z0s[i], problem, cfg) for i in range(problem.starts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            outs = list(ex.map(_run_start, jobs))
    else:
        outs = [_run_start(j) for j in jobs]
    records = tuple(r for r, _ in outs)
    feasible = [(r, z) for r, z in outs if r.feasible]
    if not feasible:
        raise OptimizationFailure(
            f"{problem.objective}: none of {problem.starts} starts reached a feasible point",
            records)
    sign, _ = _SCALING[problem.objective]
    best, z_best = min(feasible, key=lambda t: (sign * t[0].objective, t[0].index))
    design = denormalize(z_best, cfg.bounds)
    report = evaluate(design, cfg, check_bounds=False)

    prob = NormalizedProblem(problem.objective, cfg, fd_step=problem.fd_step)
    g = prob.cons(z_best)
    active = tuple(n for n, v in zip(CONSTRAINT_NAMES, g) if abs(v) < 1e-5)
    lower = z_best <= 1e-8
    upper = z_best >= 1.0 - 1e-8
    bounds_active = tuple(f"{n}={'lower' if lo else 'upper'}"
                          for n, lo, up in zip(DESIGN_VARIABLES, lower, upper) if lo or up)
    # stationarity proxy: gradient with bound-blocked components removed
    grad = prob.fun_jac(z_best)
    free = ~((lower & (grad > 0)) | (upper & (grad < 0)))
    pg = float(np.linalg.norm(grad[free]))
    return OptimizationResult(
        problem=problem, design=design, objective=objective_value(report, problem.objective),
        constraints=dict(report.constraints), feasible=report.feasible or
        min(g) >= -problem.feasibility_tol,
        best_start=best.index, iterations=best.iterations, nfev=sum(r.nfev for r in records),
        status=best.status, message=best.message, active_constraints=active,
        active_bounds=bounds_active, projected_gradient_norm=pg, starts=records, report=report)


def sweep(variable: str, grid, frozen: DesignVector, cfg: ScenarioConfig) -> list[dict]:
    """Evaluate ``frozen`` with ``variable`` set to each grid value."""
    if variable not in DESIGN_VARIABLES:
        raise ValueError(f"unknown design variable {variable!r}")
    rows = []
    for v in grid:
        d = DesignVector.from_dict({**frozen.to_dict(), variable: float(v)})
        d.check_bounds(cfg.bounds)
        row: dict = {variable: float(v)}
        try:
            rep = evaluate(d, cfg)
        except EvaluationError as exc:
            row.update(feasible=False, error=exc.tag)
            rows.append(row)
            continue
        row.update({name: objective_value(rep, name) for name in OBJECTIVES})
        row.update(rep.constraints)
        row.update(m_battery=rep.mass.m_battery, m_mtom=rep.mass.m_mtom,
                   n_cycles=rep.battery.n_cycles, feasible=rep.feasible, error="")
        rows.append(row)
    return rows


def latin_hypercube_audit(cfg: ScenarioConfig, n: int = 10_000, seed: int = 0) -> dict:
    """Evaluate a Latin-hypercube sample; returns the best feasible value per
    objective (natural sense) and counts."""
    z = qmc.LatinHypercube(d=len(DESIGN_VARIABLES), seed=seed).random(n)
    best = {name: None for name in OBJECTIVES}
    n_feasible = n_failed = 0
    for zi in z:
        try:
            rep = evaluate(denormalize(zi, cfg.bounds), cfg, check_bounds=False)
        except EvaluationError:
            n_failed += 1
            continue
        if not rep.feasible:
            continue
        n_feasible += 1
        for name in OBJECTIVES:
            v = objective_value(rep, name)
            sign = _SCALING[name][0]
            if best[name] is None or sign * v < sign * best[name]:
                best[name] = v
    return {"best": best, "n": n, "feasible": n_feasible, "failed": n_failed}
