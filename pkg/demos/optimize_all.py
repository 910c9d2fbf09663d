"""Run the four single-objective optimizations and compare the optima.

Run: python demos/optimize_all.py   (about 10 s)
"""

import time

from evtol_mdo import ScenarioConfig
from evtol_mdo.config import DESIGN_VARIABLES
from evtol_mdo.optimize import OptimizationProblem, optimize
from evtol_mdo.pipeline import OBJECTIVES, objective_value

cfg = ScenarioConfig()
results = {}
for name in OBJECTIVES:
    t0 = time.perf_counter()
    res = optimize(OptimizationProblem.from_config(name, cfg), cfg)
    results[name] = res
    print(f"{name:11s} {res.objective:12.6g}  {time.perf_counter() - t0:4.1f} s  active: "
          f"{', '.join(res.active_constraints + res.active_bounds) or 'none'}")

print()
print(f"{'':11s}" + "".join(f"{v:>11s}" for v in DESIGN_VARIABLES))
for name, res in results.items():
    d = res.design.to_dict()
    print(f"{name:11s}" + "".join(f"{d[v]:11.3f}" for v in DESIGN_VARIABLES))

# cross-evaluation: how each optimum scores on every objective
print()
print(f"{'':11s}" + "".join(f"{o:>13s}" for o in OBJECTIVES))
for name, res in results.items():
    print(f"{name:11s}" + "".join(f"{objective_value(res.report, o):13.5g}" for o in OBJECTIVES))
