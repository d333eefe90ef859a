import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number = getattr(report, "acceptance_number", None)
    if number is not None:
        _ACCEPTANCE.append((number, report.acceptance_title, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        rep.acceptance_number, rep.acceptance_title = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    merged = {}
    for number, title, outcome in _ACCEPTANCE:
        prev = merged.get(number, (title, "passed"))
        merged[number] = (title, "failed" if "failed" in (prev[1], outcome) else outcome)
    for number in sorted(merged):
        title, outcome = merged[number]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] AC{number}: {title}")
