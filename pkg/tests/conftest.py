import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from evtol_mdo import DesignVector, ScenarioConfig, evaluate  # noqa: E402
from reference import REFERENCE  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def cfg():
    return ScenarioConfig().validate()


@pytest.fixture(scope="session")
def ref_designs():
    return {k: DesignVector(*v["x"]) for k, v in REFERENCE.items()}


@pytest.fixture(scope="session")
def ref_reports(cfg, ref_designs):
    return {k: evaluate(d, cfg) for k, d in ref_designs.items()}


@pytest.fixture(scope="session")
def optimized(cfg):
    """The four default-seed optimizations, with wall times in seconds."""
    import time

    from evtol_mdo import OptimizationProblem, optimize
    out = {}
    for name in ("max_profit", "min_toc", "min_gwp", "max_fom"):
        t0 = time.perf_counter()
        res = optimize(OptimizationProblem.from_config(name, cfg), cfg)
        out[name] = (res, time.perf_counter() - t0)
    return out


ACCEPTANCE = {}


@pytest.fixture()
def criterion():
    """Record one acceptance criterion outcome: ``criterion(n, ok, detail)``."""
    def record(n: int, ok: bool, detail: str):
        ACCEPTANCE[n] = (ok, detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
