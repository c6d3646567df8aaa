import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("chtg", deadline=None, max_examples=100)
settings.load_profile("chtg")


@pytest.fixture
def rng():
    return np.random.default_rng(20250811)
