import pytest

from ginv.rings import diag, make_ring


@pytest.fixture
def q4():
    return make_ring(("Q", 4))


@pytest.fixture
def example_pair(q4):
    return diag(q4, [1, 1, 0, 0]), diag(q4, [1, 0, 1, 0])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
