import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = "test_acceptance.py::test_criterion_"
_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    if _ACCEPTANCE not in report.nodeid:
        return
    number = int(report.nodeid.rsplit("_", 1)[1])
    if report.when == "call" or report.failed:
        if _outcomes.get(number) != "FAIL":
            _outcomes[number] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        status = _outcomes.get(number, "NOT RUN")
        terminalreporter.write_line(f"{status} criterion {number}: {title}")
