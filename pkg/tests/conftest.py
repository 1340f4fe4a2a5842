import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

settings.register_profile(
    "mpf", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("mpf")


@pytest.fixture(autouse=True)
def working_precision():
    """Every test runs at the package's default 64-digit precision."""
    with mp.workdps(64):
        yield
