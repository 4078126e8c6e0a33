import os

os.environ["PAIRWISE_OT_LOG_TO_FILE"] = "0"
os.environ.setdefault("PAIRWISE_OT_LOG_LEVEL", "WARNING")

import json

import numpy as np
import pytest

from src.core.distributions import DiscreteDistribution
from src.core.spaces import explicit_metric_space


@pytest.fixture(autouse=True)
def _no_seed_override(monkeypatch):
    monkeypatch.delenv("PAIRWISE_OT_SEED", raising=False)
    monkeypatch.delenv("PAIRWISE_OT_THREADS", raising=False)
    monkeypatch.delenv("PAIRWISE_OT_ORACLE_MAX_SUPPORT", raising=False)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def planar_distances(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)


@pytest.fixture
def random_metric_space(rng):
    """Factory for explicit spaces on random planar points."""

    def make(size: int = 6, q: float = 1.0):
        return explicit_metric_space(planar_distances(rng.random((size, 2))), q=q)

    return make


@pytest.fixture
def random_distribution(rng):
    """Factory for random distributions with a random support of at least ``min_support`` points."""

    def make(space, min_support: int = 1, zero_fraction: float = 0.3):
        weights = rng.random(space.size)
        weights[rng.random(space.size) < zero_fraction] = 0.0
        if np.count_nonzero(weights) < min_support:
            weights[rng.choice(space.size, size=min_support, replace=False)] = rng.random(min_support) + 0.1
        return DiscreteDistribution.from_weights(space, weights)

    return make


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, payload) -> str:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload))
        return str(path)

    return write


@pytest.fixture
def check_marginal():
    """Asserts that sampled points follow ``mass`` within 4.5 binomial standard errors per point."""

    def check(points: np.ndarray, mass: np.ndarray):
        points = np.asarray(points)
        trials = points.size
        freq = np.bincount(points, minlength=mass.size) / trials
        sigma = np.sqrt(mass * (1.0 - mass) / trials)
        assert np.all(freq[mass == 0] == 0)
        assert np.all(np.abs(freq - mass) <= 4.5 * sigma + 1e-3), (freq, mass)

    return check
