import math

import numpy as np
import pytest

from hopfq.states import PureState

R2 = 1 / math.sqrt(2)
R3 = 1 / math.sqrt(3)

ACCEPTANCE_LINES = []


def basis_state(n, index):
    amps = [0j] * 2**n
    amps[index] = 1 + 0j
    return PureState(n, tuple(amps))


def random_vectors(rng, n, count):
    """Independent Haar sampler for tests (does not use the package sampler)."""
    v = rng.normal(size=(count, 2**n)) + 1j * rng.normal(size=(count, 2**n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def bell():
    return PureState(2, (R2, 0, 0, R2))


@pytest.fixture
def ghz():
    return PureState(3, (R2, 0, 0, 0, 0, 0, 0, R2))


@pytest.fixture
def w_state():
    return PureState(3, (0, R3, R3, 0, R3, 0, 0, 0))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
