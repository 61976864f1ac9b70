import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, label): numbered acceptance check")


def pytest_runtest_logreport(report):
    # failures in setup count too; a passing setup is followed by the call report
    if report.when == "call" or (report.when == "setup" and not report.passed):
        for key, value in report.user_properties:
            if key == "acceptance":
                _acceptance[value[0]] = (value[1], report.outcome)


@pytest.fixture(autouse=True)
def _record_acceptance(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker is not None:
        request.node.user_properties.append(("acceptance", tuple(marker.args)))
    yield


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance checks")
    for num in sorted(_acceptance):
        label, outcome = _acceptance[num]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {num:2d}. {label}")
