"""Shared pytest configuration.

Collects the outcome of every acceptance criterion test and appends a
one-line-per-criterion report to the terminal summary, so a plain
``pytest`` run always ends with an explicit pass/fail line for each.
"""

import pytest

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if "test_acceptance.py" not in str(item.fspath):
        return
    if not item.name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        num = item.name.split("_")[2]
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        passed = _ACCEPTANCE.get(num, (None, True))[1] and report.passed
        _ACCEPTANCE[num] = (doc, passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        doc, passed = _ACCEPTANCE[num]
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[criterion {num}] {word} - {doc}")
