import pytest

from kgdot.model import ConfinementParams
from kgdot.oracle import RadialGrid


@pytest.fixture(scope="session")
def unit_params():
    return ConfinementParams(1.0, 1.0, 1.0)


@pytest.fixture(scope="session")
def default_grid():
    return RadialGrid.default()


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} | {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
