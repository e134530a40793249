import os

# Keep test runs off the rotating JSON log file and on a single worker.
os.environ.setdefault("BIRTH_LOG_FILE", "")
os.environ.setdefault("BIRTH_N_JOBS", "1")

import numpy as np
import pytest

from model.configuration import Configuration
from model.kernels import FreeIndicator, Profile, ProfileShape, SumKernel, TruncatedIndicator



@pytest.fixture
def trunc2():
    return TruncatedIndicator(cap=2.0, radius=1.0)


@pytest.fixture
def free1():
    return FreeIndicator(radius=1.0)


@pytest.fixture
def tent_capped():
    return SumKernel(profile=Profile(shape=ProfileShape.TENT, support=1.0), scale=2.0, cap=3.0)


@pytest.fixture
def origin1():
    return Configuration.origin(1)


@pytest.fixture
def origin2():
    return Configuration.origin(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)
