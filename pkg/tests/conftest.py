import numpy as np
import pytest

from tlqed import CircuitParams, TruncationSpec


@pytest.fixture
def params():
    return CircuitParams()


@pytest.fixture
def trunc():
    return TruncationSpec()


@pytest.fixture
def rng():
    return np.random.default_rng(20250808)
