import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from periodic_opuc import VerblunskyPeriod

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def free2():
    return VerblunskyPeriod((0.0, 0.0))


@pytest.fixture
def const_half():
    return VerblunskyPeriod((0.5,))
