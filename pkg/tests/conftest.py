from collections import defaultdict

import pytest

CRITERIA = {
    1: "example1 classification",
    2: "mishchenko(d) Lie-solvable of index 3",
    3: "Lie-solvable iff commutator ideal right nilpotent",
    4: "non-nilpotency chain scaling",
    5: "identity coherence and the Lie-metabelian bounds",
    6: "associator and commutator ideals, inclusion",
    7: "solvable / right nilpotent / N^2 nilpotent agree",
    8: "Gelfand-Dorfman instances are Novikov",
    9: "determinism, perturbation witnesses, round trip",
}

_outcomes: dict = defaultdict(list)


def pytest_runtest_logreport(report):
    number = getattr(report, "acceptance_number", None)
    if number is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[number].append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        outcome.get_result().acceptance_number = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        results = _outcomes.get(number)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
