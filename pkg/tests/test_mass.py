import dataclasses
import math

import pytest

from evtol_mdo import DesignVector
from evtol_mdo.design import denormalize
from evtol_mdo.mass import (MtomDivergenceError, _loop_body, battery_mass, design_capacity,
                            motor_mass, payload_mass, rotor_mass, solve_mtom)
from evtol_mdo.mission import EnergyBudget, PhaseState, fly_mission
from reference import REFERENCE


def test_payload_default(cfg):
    assert payload_mass(cfg) == pytest.approx(392.8)


def test_payload_zero_and_hand_case(cfg):
    assert payload_mass(cfg, load_factor=0.0) == 0.0
    # 2 seats x 0.5 x (84 + 14.2) kg
    assert payload_mass(cfg, load_factor=0.5, seats=2) == pytest.approx(98.2)


@pytest.mark.parametrize("e_design, rho, expected", [(234.7, 290.0, 809.0), (162.0, 400.0, 405.0)])
def test_battery_mass_reference(e_design, rho, expected):
    usable = 0.64 * e_design
    assert battery_mass(usable, 0.0, rho) == pytest.approx(expected, abs=1.0)
    assert design_capacity(usable, 0.0) == pytest.approx(e_design)


def test_battery_mass_zero():
    assert battery_mass(0.0, 0.0, 300.0) == 0.0
    with pytest.raises(ValueError):
        battery_mass(1.0, 0.0, 0.0)


def test_rotor_and_motor_monotone(cfg):
    mc = cfg.mass
    assert rotor_mass(2.0, mc) > rotor_mass(1.0, mc)
    assert motor_mass(100.0, 1.5, mc) > motor_mass(100.0, 1.0, mc)


@pytest.mark.parametrize("name", ["toc", "gwp", "profit", "fom"])
def test_reference_mtom(cfg, ref_designs, name):
    m = solve_mtom(ref_designs[name], cfg)
    assert m.m_mtom == pytest.approx(REFERENCE[name]["mtom"], rel=0.05)


def test_fixed_point_residual_and_identity(cfg, ref_designs):
    for d in ref_designs.values():
        m = solve_mtom(d, cfg)
        g, *_ = _loop_body(m.m_mtom, d, cfg, fly_mission)
        assert abs(g - m.m_mtom) < 0.01
        assert m.m_mtom == m.m_payload + m.m_empty + m.m_battery
        parts = (m.m_wing + m.m_fuselage + m.m_gear + m.m_rotor + m.m_motor + m.m_systems
                 + m.m_furnish + m.m_crew)
        assert m.m_empty == pytest.approx(parts, rel=1e-14)


@pytest.mark.parametrize("guess", [500.0, 2000.0, 5700.0])
def test_initial_guess_independence(cfg, ref_designs, guess):
    d = ref_designs["toc"]
    base = solve_mtom(d, cfg).m_mtom
    assert abs(solve_mtom(d, cfg, initial_guess=guess).m_mtom - base) < 0.1


def _zero_mission(m, design, cfg):
    ms = fly_mission(m, design, cfg)
    zero = lambda p: dataclasses.replace(p, power=0.0)
    budget = EnergyBudget(e_trip=0.0, e_res=0.0, e_usable=0.0, e_design=0.0, dod=0.0,
                          e_usable_specific=ms.budget.e_usable_specific)
    return dataclasses.replace(ms, hover=zero(ms.hover), climb=zero(ms.climb),
                               cruise=zero(ms.cruise), budget=budget)


def test_degenerate_zero_payload_zero_mission(cfg, ref_designs):
    c = cfg.replace(operations={"sizing_load_factor": 0.0})
    m = solve_mtom(ref_designs["toc"], c, fly=_zero_mission)
    assert m.m_battery == 0.0
    assert m.m_payload == 0.0
    assert m.m_mtom == pytest.approx(m.m_empty, rel=1e-12)


def test_trip_distance_monotone(cfg, ref_designs):
    d = ref_designs["gwp"]
    prev = None
    for km in (40, 55, 70, 85, 100):
        m = solve_mtom(d, cfg.replace(mission={"trip_distance": km * 1000.0}))
        if prev is not None:
            assert m.m_battery >= prev.m_battery and m.m_mtom >= prev.m_mtom
        prev = m


def test_divergence_detected(cfg):
    # the centre of the design box has no mass closure
    with pytest.raises(MtomDivergenceError) as exc:
        solve_mtom(denormalize([0.5] * 6, cfg.bounds), cfg)
    assert len(exc.value.trace) >= 2


def test_validity_warning_outside_regression_range(cfg, ref_designs):
    c = cfg.replace(mass={"regression_mtom_range": [2000.0, 5700.0]})
    m = solve_mtom(ref_designs["toc"], c)
    assert any("regression range" in w for w in m.warnings)
    assert not solve_mtom(ref_designs["toc"], cfg).warnings
