"""Acceptance bookkeeping: each criterion records a verdict, printed at the end of the run."""

import time

import pytest

SUITE_BUDGET_SECONDS = 300
_RESULTS: dict[int, tuple[bool, str]] = {}
_START = [0.0]


def pytest_sessionstart(session):
    _START[0] = time.perf_counter()


class Recorder:
    def __call__(self, criterion: int, passed: bool, detail: str) -> None:
        _RESULTS[criterion] = (bool(passed), detail)
        print(f"criterion {criterion:2d}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def record():
    return Recorder()


def _wall_clock():
    return time.perf_counter() - _START[0]


def pytest_sessionfinish(session, exitstatus):
    if 10 in _RESULTS:
        ok, detail = _RESULTS[10]
        elapsed = _wall_clock()
        within = elapsed < SUITE_BUDGET_SECONDS
        _RESULTS[10] = (ok and within, f"{detail}; full run {elapsed:.1f}s (< {SUITE_BUDGET_SECONDS}s)")
        if not within:
            session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        ok, detail = _RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
