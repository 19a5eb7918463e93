import random
import sys
from pathlib import Path

import pytest

from ffdioph.places import INFINITY, place_set
from ffdioph.poly import T

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def S_t01():
    return place_set(T, T - 1, INFINITY)


@pytest.fixture
def S_t():
    return place_set(T, INFINITY)


@pytest.fixture
def rng():
    return random.Random(20261016)
