import pytest
from hypothesis import settings

from almost_affine.catalog import default_catalog
from shared import ACCEPTANCE_LINES

settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def catalog():
    return default_catalog(10)


@pytest.fixture(scope="session")
def cat3():
    return default_catalog(3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
