"""Pytest plumbing: one PASS/FAIL summary line per acceptance criterion."""

import pytest

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.name.startswith("test_criterion_"):
        _CRITERIA[int(item.name.split("_")[2])] = rep.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        verdict = "PASS" if _CRITERIA[num] else "FAIL"
        terminalreporter.write_line(f"criterion {num:02d}: {verdict}")
