import pytest
from hypothesis import settings

from padic_greens import make_map

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def sq():
    """(X^2 : Y^2) over Q_3; good reduction everywhere."""
    return make_map([{(2, 0): 1}, {(0, 2): 1}], 3)


@pytest.fixture
def bad():
    """(X^2 : 3Y^2) over Q_3; v_res = 2, repelling fixed point (0:1)."""
    return make_map([{(2, 0): 1}, {(0, 2): 3}], 3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
