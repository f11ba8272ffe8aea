import numpy as np
import pytest

from src.config import Tolerances
from src.export.store import ArtifactStore


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tol():
    return Tolerances()


@pytest.fixture
def store(tmp_path):
    return ArtifactStore(tmp_path / "artifacts")
