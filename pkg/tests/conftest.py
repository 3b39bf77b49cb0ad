"""Acceptance bookkeeping: one pass/fail line per criterion in the terminal summary."""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

TIME_LIMIT = 60.0

_results: dict = {}
_titles: dict = {}
_start = [0.0]


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


def pytest_sessionstart(session):
    _start[0] = time.perf_counter()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _titles[number] = title
    _results[number] = _results.get(number, True) and report.passed


def _elapsed():
    return time.perf_counter() - _start[0]


def pytest_sessionfinish(session, exitstatus):
    # the suite-wide time budget is part of criterion 10
    if _results and _elapsed() > TIME_LIMIT and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    elapsed = _elapsed()
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        ok = _results[number]
        if number == 10:
            ok = ok and elapsed <= TIME_LIMIT
            title = f"{_titles[number]} (suite time {elapsed:.1f} s, limit {TIME_LIMIT:.0f} s)"
        else:
            title = _titles[number]
        tr.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
