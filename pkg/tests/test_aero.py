import math

import pytest
from hypothesis import given, strategies as st
from scipy.optimize import minimize_scalar

from evtol_mdo.aero import (OutOfModelError, WingAero, best_lift_coefficient, drag_coefficient,
                            dynamic_force, lift_coefficient, lift_to_drag, wing_aero)


def _wing(span, chord, a0=6.30, cl0=0.228, e=0.8, cd_min=0.0397):
    return WingAero(span=span, chord=chord, oswald=e, airfoil_lift_slope=a0, cl0=cl0,
                    cd_min=cd_min)


def test_zero_alpha_gives_cl0():
    assert lift_coefficient(_wing(10.0, 1.0), 0.0) == 0.228


def test_infinite_aspect_ratio_limit():
    w = _wing(1e6, 1.0)
    assert w.lift_slope == pytest.approx(6.30, rel=1e-3)


def test_finite_wing_hand_value():
    # a = a0 / (1 + a0 / (pi AR e)), AR = 10.9, e = 0.8, alpha = 4 deg
    a0, cl0 = 6.30, 0.228
    a = a0 / (1.0 + a0 / (math.pi * 10.9 * 0.8))
    expected = a * math.radians(4.0) + cl0
    assert lift_coefficient(_wing(10.9, 1.0), math.radians(4.0)) == pytest.approx(expected, 1e-14)
    assert expected == pytest.approx(0.5856, abs=1e-3)


def test_drag_polar():
    w = _wing(9.8, 1.0)
    assert drag_coefficient(w, 0.0) == 0.0397
    assert drag_coefficient(w, 0.8) == pytest.approx(0.0397 + 0.64 / (math.pi * 9.8 * 0.8), 1e-14)
    ind = lambda cl: drag_coefficient(w, cl) - w.cd_min
    assert ind(0.8) == pytest.approx(4 * ind(0.4), rel=1e-12)


def test_forces():
    w = _wing(10.0, 1.2)
    assert dynamic_force(w, 1.225, 0.0, 0.5) == 0.0
    assert dynamic_force(w, 1.225, 60.0, 0.5) == pytest.approx(4 * dynamic_force(w, 1.225, 30.0, 0.5))


def test_stall_guard():
    with pytest.raises(OutOfModelError):
        lift_coefficient(_wing(10.0, 1.0), math.radians(20.0))


def test_lift_equals_weight_in_cruise(cfg, ref_reports):
    for rep in ref_reports.values():
        cr = rep.mission.cruise
        lift = dynamic_force(rep.mission.aero, cfg.mission.air_density_cruise, cr.speed,
                             cr.lift_coefficient)
        w = rep.mass.m_mtom * cfg.mission.gravity
        assert abs(lift - w) / w < 1e-6


@given(span=st.floats(6, 15), chord=st.floats(1, 2.5), alpha=st.floats(-0.1, 0.2))
def test_cl_affine_and_cdi_exact(span, chord, alpha):
    w = _wing(span, chord)
    cl = lift_coefficient(w, alpha)
    assert cl == pytest.approx(w.lift_slope * alpha + w.cl0, abs=1e-14)
    assert drag_coefficient(w, cl) - w.cd_min == pytest.approx(
        cl * cl / (math.pi * w.aspect_ratio * w.oswald), rel=1e-12, abs=1e-15)


@given(span=st.floats(6, 15), chord=st.floats(1, 2.5))
def test_best_lift_coefficient_numeric(span, chord):
    w = _wing(span, chord)
    res = minimize_scalar(lambda cl: -lift_to_drag(w, cl), bounds=(0.05, 3.0), method="bounded",
                          options={"xatol": 1e-12})
    analytic = math.sqrt(w.cd_min * math.pi * w.aspect_ratio * w.oswald)
    assert best_lift_coefficient(w) == pytest.approx(analytic, rel=1e-12)
    assert res.x == pytest.approx(analytic, abs=1e-6)


def test_wing_aero_from_config(cfg):
    w = wing_aero(9.8, 1.0, cfg.aero)
    assert w.aspect_ratio == pytest.approx(9.8)
    assert w.area == pytest.approx(9.8)
