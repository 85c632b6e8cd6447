import pytest
from hypothesis import settings

from gkzalg.apex import ApexSearch
from gkzalg.io import bundled_system

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SHIPPED = ("gauss", "appell-f2", "horn-g3")


@pytest.fixture(scope="session")
def systems():
    return {name: bundled_system(name) for name in SHIPPED}


@pytest.fixture(scope="session")
def searches(systems):
    return {name: ApexSearch(desc.cfg) for name, desc in systems.items()}


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for line in sorted(RESULTS):
        terminalreporter.write_line(line[1])
