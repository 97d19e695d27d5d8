import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from stagger.graded import stratum_sheaf  # noqa: E402
from stagger.perversity import middle  # noqa: E402
from stagger.torus import Stratum, TorusSetup  # noqa: E402

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def s12():
    return TorusSetup.global_linear([1, 1, 1])


@pytest.fixture(scope="session")
def r_mid(s12):
    return middle(s12, "staggered")


@pytest.fixture(scope="session")
def alt_mid(s12):
    return middle(s12, "baric")


@pytest.fixture(scope="session")
def Ox():
    return stratum_sheaf(3, [2, 3])


@pytest.fixture(scope="session")
def Oz():
    return stratum_sheaf(3, [1, 2])


@pytest.fixture(scope="session")
def origin():
    return Stratum([1, 2, 3])


@pytest.fixture(scope="session")
def x_axis():
    return Stratum([2, 3])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
