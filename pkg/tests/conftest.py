import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240612)


@pytest.fixture
def stable_matrix():
    # strictly stable, non-normal 2x2 drift
    return np.array([[-1.0, 2.0], [0.0, -3.0]])
