import pytest

from quanton_decay.spectra import make_breit_wigner, make_gaussian

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def bw():
    return make_breit_wigner(1.0, 0.05)


@pytest.fixture(scope="session")
def gauss():
    return make_gaussian(1.0, 0.02)


@pytest.fixture(scope="session")
def narrow():
    return make_gaussian(1.0, 1e-3)


@pytest.fixture(scope="session")
def delta_like():
    return make_gaussian(1.0, 1e-9)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
