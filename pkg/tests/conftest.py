"""Prints one ACCEPTANCE nn PASS/FAIL line per acceptance criterion at the
end of the run, bypassing output capture."""

_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    parts = name.split("_")
    if len(parts) > 1 and parts[1].isdigit():
        _results[parts[1]] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    for num in sorted(_results):
        terminalreporter.write_line(f"ACCEPTANCE {num} {_results[num]}")
