import pytest

from adelic_qft.model import P1Model


@pytest.fixture(scope="session")
def model():
    return P1Model()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
