import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[str, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    name = item.name
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        doc = (item.obj.__doc__ or name).strip().splitlines()[0]
        _CRITERIA[name] = ("PASS" if report.passed else "FAIL", doc, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split("_")[2])):
        verdict, doc, secs = _CRITERIA[name]
        number = int(name.split("_")[2])
        terminalreporter.write_line(f"{verdict}  criterion {number:2d}: {doc}  ({secs:.2f}s)")
