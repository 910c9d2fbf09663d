"""Place the cost-optimal eVTOL among conventional modes and show how the
ranking moves with the weight vector.

Run: python demos/fom_comparison.py
"""

from pathlib import Path

from evtol_mdo import ScenarioConfig, evaluate
from evtol_mdo.cli import load_design
from evtol_mdo.fom import default_modes, evtol_trip_values, fom_table

cfg = ScenarioConfig()
rep = evaluate(load_design(Path(__file__).parent / "designs" / "toc.yaml"), cfg)
evtol = evtol_trip_values(rep.costs.toc, rep.gwp.gwp_cycle_total, rep.mission.flight_time, cfg)
print(f"eVTOL per person: {evtol[0]:.2f} EUR, {evtol[1]:.2f} kg CO2e, {60 * evtol[2]:.1f} min")

for weights in [(1 / 3, 1 / 3, 1 / 3), (0.6, 0.2, 0.2), (0.2, 0.2, 0.6)]:
    table = fom_table(default_modes(), cfg.fom.distance_km, weights, extra={"eVTOL": evtol})
    print(f"\nweights cost/CO2e/time = {', '.join(f'{w:.2f}' for w in weights)}")
    for r in table.rows[:5]:
        print(f"  {r.rank:2d}. {r.label:32s} {r.fom:5.2f}")
    print(f"  eVTOL rank {table.row('eVTOL').rank} of {len(table.rows)}")
