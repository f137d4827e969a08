import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from symsep import states  # noqa: E402


@pytest.fixture(scope="session")
def rho33():
    return states.builtin_rho33()


@pytest.fixture(scope="session")
def triplet():
    return states.triplet_state()


@pytest.fixture(scope="session")
def singlet():
    return states.singlet_state()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
