"""Sweep the charging rate of the cost-optimal design.

Faster charging shortens the turnaround, so more flights fit into a day,
but each cycle ages the pack harder. The optimum balances the two.

Run: python demos/charge_rate_sweep.py
"""

from pathlib import Path

import numpy as np

from evtol_mdo import ScenarioConfig
from evtol_mdo.cli import load_design
from evtol_mdo.optimize import sweep

cfg = ScenarioConfig()
base = load_design(Path(__file__).parent / "designs" / "toc.yaml")
rows = sweep("c_charge", np.linspace(*cfg.bounds.c_charge, 13), base, cfg)
print(f"{'C':>6s}{'cycles':>9s}{'TOC EUR':>10s}{'profit EUR/yr':>15s}{'GWP t/yr':>10s}")
for r in rows:
    if r["error"]:
        print(f"{r['c_charge']:6.2f}  {r['error']}")
        continue
    print(f"{r['c_charge']:6.2f}{r['n_cycles']:9.0f}{r['min_toc']:10.2f}"
          f"{r['max_profit']:15.4g}{r['min_gwp']:10.1f}")
