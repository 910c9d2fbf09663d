"""Evaluate the four reference designs and print their headline numbers.

Run: python demos/reference_designs.py
"""

from pathlib import Path

from evtol_mdo import ScenarioConfig, evaluate
from evtol_mdo.cli import load_design
from evtol_mdo.pipeline import report_summary

HERE = Path(__file__).parent
COLUMNS = [("mtom", "MTOM kg", "{:.0f}"), ("m_battery", "battery kg", "{:.0f}"),
           ("e_trip", "E_trip kWh", "{:.1f}"), ("dod", "DoD", "{:.2f}"),
           ("t_turnaround_min", "turn min", "{:.1f}"), ("n_cycles", "cycles", "{:.0f}"),
           ("toc", "TOC EUR", "{:.1f}"), ("profit_annual", "profit EUR/yr", "{:.3g}"),
           ("gwp_annual", "GWP t/yr", "{:.1f}"), ("spl_hover", "SPL dB(A)", "{:.1f}"),
           ("fom", "FoM", "{:.2f}")]

cfg = ScenarioConfig()
print(f"{'design':8s}" + "".join(f"{h:>15s}" for _, h, _ in COLUMNS))
for name in ("profit", "toc", "gwp", "fom"):
    rep = evaluate(load_design(HERE / "designs" / f"{name}.yaml"), cfg)
    s = report_summary(rep)
    print(f"{name:8s}" + "".join(f"{fmt.format(s[k]):>15s}" for k, _, fmt in COLUMNS))

# the profit design trades a heavy pack and fast charging for many short turns;
# the GWP design does the opposite, charging slowly on a small light pack
