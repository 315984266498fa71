import pytest

from powerfree.primes import build_table

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def table():
    return build_table(5000)


@pytest.fixture
def record_criterion():
    """Log a one-line verdict for an acceptance criterion."""

    def record(number, description, passed, detail=""):
        ACCEPTANCE_RESULTS.append((number, description, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, passed, detail in sorted(ACCEPTANCE_RESULTS):
        verdict = "PASS" if passed else "FAIL"
        line = f"[{verdict}] criterion {number}: {description}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
