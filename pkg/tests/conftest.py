from __future__ import annotations

import pytest

from reconsys.orchestrator import MasterConfig, ScanMaster


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(cid, title): exit-criteria check, one line per result"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        cid, title = marker.args
        verdict = "PASS" if report.passed else "FAIL"
        capman = item.config.pluginmanager.getplugin("capturemanager")
        if capman:
            with capman.global_and_fixture_disabled():
                print(f"\n[ACCEPTANCE] {cid} {title}: {verdict}")
        else:
            print(f"\n[ACCEPTANCE] {cid} {title}: {verdict}")


class ManualClock:
    """Deterministic clock for timer-driven orchestrator tests."""

    def __init__(self, start: float = 1000.0):
        self.now = start

    def __call__(self) -> float:
        return self.now

    def advance(self, seconds: float) -> float:
        self.now += seconds
        return self.now


@pytest.fixture
def manual_clock() -> ManualClock:
    return ManualClock()


@pytest.fixture
def master(manual_clock) -> ScanMaster:
    return ScanMaster(
        MasterConfig(suspect_timeout=15.0, dead_timeout=60.0, attempt_cap=5),
        clock=manual_clock,
    )
