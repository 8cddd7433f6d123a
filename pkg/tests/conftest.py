import os

import numpy as np
import pytest

from landauer_mbqc.graphstate import ClusterLayout
from landauer_mbqc.qsim import StateVector, random_pure_state

PATTERN_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "patterns")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def random_state(rng):
    """Factory for Haar-random states drawn from the seeded generator."""
    def make(num_qubits: int) -> StateVector:
        return random_pure_state(num_qubits, rng)
    return make


@pytest.fixture
def wire3():
    return ClusterLayout.square_lattice(1, 3)


@pytest.fixture
def cluster23():
    return ClusterLayout.square_lattice(2, 3)


@pytest.fixture
def pattern_path():
    def path(name: str) -> str:
        return os.path.join(PATTERN_DIR, name)
    return path


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    monkeypatch.delenv("LANDAUER_MBQC_THREADS", raising=False)
    monkeypatch.delenv("LOG_LEVEL", raising=False)
