import pytest
from hypothesis import HealthCheck, settings

from nsjac.curve import NsCurve
from nsjac.field import PrimeField

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def f7():
    return PrimeField(7)


@pytest.fixture(scope="session")
def e7(f7):
    """y^2 = x^3 + 1 over F_7, the curve of the worked examples."""
    return NsCurve(f7, 2, 3, {(0, 0): 1})


@pytest.fixture(scope="session")
def g2():
    """A genus-2 curve y^2 = x^5 + 3x + 11 over F_10007."""
    F = PrimeField(10007)
    return NsCurve(F, 2, 5, {(1, 0): 3, (0, 0): 11})


@pytest.fixture(scope="session")
def c34():
    """A genus-3 (3,4) curve over F_1009 with a mixed tail."""
    F = PrimeField(1009)
    return NsCurve(F, 3, 4, {(0, 0): 3, (1, 1): 5, (2, 0): 7})


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
