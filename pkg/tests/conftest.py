import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=50, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", deadline=None, max_examples=10)
settings.register_profile("debugger", deadline=None, max_examples=5, print_blob=True)
settings.load_profile(os.getenv("OLSPACE_HYPOTHESIS_PROFILE", "default"))


@pytest.fixture()
def rng():
    return np.random.default_rng(20240611)
