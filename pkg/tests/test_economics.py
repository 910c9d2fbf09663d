import dataclasses

import pytest
from hypothesis import given, strategies as st

from evtol_mdo.battery import BatteryOps
from evtol_mdo.economics import (annuity_factor, cost_breakdown, navigation_charge, profit,
                                 utilization)
from evtol_mdo.pipeline import evaluate
from reference import REFERENCE


def test_block_time_flights_per_day(cfg):
    u = utilization(18.1 * 60, 10.4 * 60, cfg)
    assert u.t_leg / 60 == pytest.approx(28.5)
    assert u.flights_per_day == pytest.approx(8 * 60 / 28.5)
    assert round(u.flights_per_day) == 17


def test_leg_equal_window_is_one_flight(cfg):
    u = utilization(cfg.operations.daily_window_h * 3600.0, 0.0, cfg)
    assert u.flights_per_day == pytest.approx(1.0)


def test_reference_utilization(ref_reports):
    rep = ref_reports["toc"]
    assert rep.utilization.flight_hours_year == pytest.approx(REFERENCE["toc"]["flight_hours"], rel=0.10)
    for name, r in ref_reports.items():
        assert r.utilization.fc_a == pytest.approx(REFERENCE[name]["fc_a"], rel=0.05)


def test_reference_toc(ref_reports):
    c = ref_reports["toc"].costs
    assert c.toc == pytest.approx(94.7, rel=0.05)
    assert c.toc_per_skm == pytest.approx(0.34, rel=0.05)


def test_published_components_sum():
    # published DOC pieces of the profit design: cash operating and ownership
    assert (79.11 + 27.08) * 1.22 == pytest.approx(129.5, abs=0.1)


def _hierarchy(c, cfg):
    ec = cfg.economics
    assert c.coc == pytest.approx(c.c_e + c.c_c + c.c_n + c.c_wrm + c.c_mb, rel=1e-12)
    assert c.coo == pytest.approx(c.c_ins + c.c_dep, rel=1e-12)
    assert c.doc == pytest.approx(c.coc + c.coo, rel=1e-12)
    assert c.ioc == pytest.approx(ec.ioc_fraction * c.doc, rel=1e-12)
    assert c.toc == pytest.approx(c.doc + c.ioc, rel=1e-12)
    assert c.c_ins == pytest.approx(ec.insurance_fraction * c.coc, rel=1e-12)


def test_hierarchy_on_reference(cfg, ref_reports):
    for rep in ref_reports.values():
        _hierarchy(rep.costs, cfg)


def test_zero_trip_degenerate(cfg):
    u = utilization(0.0, 600.0, cfg)
    bat = BatteryOps(n_cycles=1e9, c_charge=1.0, c_dis_avg=1.0, dod=0.0, t_turnaround=600.0,
                     replacements_per_year=0.0)
    c = cost_breakdown(0.0, 100.0, 1500.0, 800.0, u, bat, cfg)
    assert c.c_e == 0.0 and c.c_wrm == 0.0
    _hierarchy(c, cfg)


def test_zero_fare(cfg, ref_reports):
    rep = ref_reports["toc"]
    c0 = cfg.replace(economics={"fare_per_km": 0.0})
    p = profit(rep.costs, rep.utilization, c0)
    assert p.annual == pytest.approx(-rep.utilization.fc_a * rep.costs.toc)


def test_reference_profit(ref_reports):
    assert ref_reports["profit"].profit.annual == pytest.approx(1.49e6, rel=0.10)
    assert ref_reports["fom"].profit.per_flight == pytest.approx(268.0, rel=0.10)


def test_annuity_factor_present_value_oracle():
    r, n = 0.05, 10
    pv = sum((1 + r) ** -k for k in range(1, n + 1))
    assert annuity_factor(r, n) == pytest.approx(1 / pv, rel=1e-12)
    assert annuity_factor(0.0, 8) == pytest.approx(1 / 8)


def test_navigation_charge_reference_point(cfg):
    ec = cfg.economics
    assert navigation_charge(ec.nav_reference_distance_km, ec.nav_reference_mass_t * 1000, ec) == pytest.approx(ec.nav_unit_rate)


@given(st.floats(1.05, 3.0))
def test_toc_increases_with_prices(cfg, ref_designs, f):
    d = ref_designs["toc"]
    base = evaluate(d, cfg).costs.toc
    ec = cfg.economics
    assert evaluate(d, cfg.replace(economics={"electricity_price": ec.electricity_price * f})).costs.toc > base
    assert evaluate(d, cfg.replace(economics={"battery_pack_price": ec.battery_pack_price * f})).costs.toc > base


def test_shares_sum_to_100(ref_reports):
    for rep in ref_reports.values():
        assert sum(rep.costs.shares().values()) == pytest.approx(100.0, abs=1e-9)
