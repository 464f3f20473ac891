import numpy as np
import pytest

from uqpc.transport import SlabProblem


@pytest.fixture(scope="session")
def d1_problem() -> SlabProblem:
    # Single 1 cm section, cross section U(0.05, 1.95).
    return SlabProblem(sigma0=[1.0], sigma_delta=[0.95], dx=[1.0])


@pytest.fixture(scope="session")
def d3_problem() -> SlabProblem:
    # Three identical 1 cm sections, cross sections U(0.01, 0.59).
    return SlabProblem(sigma0=[0.3] * 3, sigma_delta=[0.29] * 3, dx=[1.0] * 3)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260814)
