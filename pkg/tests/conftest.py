import pytest

from selbergkit.galois import load_catalog

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def s3(catalog):
    return catalog["s3_x3m2"]


@pytest.fixture(scope="session")
def qi(catalog):
    return catalog["qi_x2p1"]


@pytest.fixture(scope="session")
def d4(catalog):
    return catalog["d4_x4m2"]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
