import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERION_PREFIX = "test_criterion_"
_outcomes: dict[int, list[bool]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith(CRITERION_PREFIX):
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number = int(name[len(CRITERION_PREFIX):].split("_", 1)[0])
        _outcomes.setdefault(number, []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        ok = all(_outcomes[number])
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}")
