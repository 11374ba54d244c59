"""Shared fixtures and the acceptance-summary terminal hook."""

import pytest

ACCEPTANCE_MODULE = "test_acceptance"

_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    if ACCEPTANCE_MODULE not in report.nodeid:
        return
    outcome = report.outcome.upper()
    if hasattr(report, "wasxfail") and report.wasxfail:
        outcome = "XFAIL (documented reference-table defect)"
    _results.append((report.nodeid.split("::")[-1], outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _results:
        terminalreporter.write_line(f"{outcome:<6}  {name}")


@pytest.fixture(scope="session")
def alpha():
    return 0.5
