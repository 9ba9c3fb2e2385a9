import pytest

from multdep.poly import PolySystem, parse_poly

ACCEPTANCE_LINES = []


def system(*texts, m=1):
    return PolySystem(tuple(parse_poly(t, m) for t in texts))


@pytest.fixture
def make_system():
    return system


@pytest.fixture
def acceptance_report():
    def record(number, passed, detail):
        ACCEPTANCE_LINES.append((number, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {detail}")
