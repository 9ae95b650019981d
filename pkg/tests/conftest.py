"""Shared pytest wiring.

Tests marked ``acceptance("criterion NN: ...")`` get one PASS/FAIL/SKIP
line each in a terminal summary section, so the gate's verdict is readable
at a glance regardless of how verbose the run was.
"""

import pytest

_results: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): labels a test as one numbered acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    name = marker.args[0]
    if report.when == "setup" and report.skipped:
        _results[name] = "SKIP"
    elif report.when == "call":
        _results[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        terminalreporter.write_line(f"{name}: {_results[name]}")
