import math

import pytest
from hypothesis import HealthCheck, settings

from conekrahn.weight import cone

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def quarter():
    """n = 2 wedge of opening pi/2 (mu = 4, alpha = a = 2)."""
    return cone(interval=math.pi / 2)


@pytest.fixture(scope="session")
def hemi():
    """n = 3 cone over the upper hemisphere (mu = 2, alpha = 1, a = 3/2)."""
    return cone(cap=math.pi / 2)


@pytest.fixture(scope="session")
def cap60():
    return cone(cap=math.pi / 3)


@pytest.fixture(scope="session", params=["quarter", "cap60"])
def geom(request):
    return request.getfixturevalue(request.param)


_ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
