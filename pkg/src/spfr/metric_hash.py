"""
Locality sensitive hash for distributions on a finite metric space.

At each level the remaining candidate set S shrinks to the radius-w ball
around the observed point z, where z is the Poisson race winner for the
current observation law p_hat. The posterior is kept in the log domain.
"""

from typing import List, Optional, Union

import numpy as np

from src.core.distributions import DiscreteDistribution
from src.core.seeding import SeedContext, as_seed, exponential_from_keys
from src.core.spaces import CostSpace
from src.logger_config import setup_logger
from src.poisson.pfr import race
from src.spfr.schedule import DEFAULT_ETA, _check_eta, level_range, reduced_level_matrix, thetas_from_keys

logger = setup_logger(__name__)

CHUNK_CELLS = 1 << 22
MAX_EXTRA_LEVELS = 4096


def _logsumexp_rows(logp: np.ndarray) -> np.ndarray:
    top = logp.max(axis=1, keepdims=True)
    return top + np.log(np.exp(logp - top).sum(axis=1, keepdims=True))


def _hash_chunk(
    metric: np.ndarray,
    mass: np.ndarray,
    keys: np.ndarray,
    eta: float,
    reduced: bool,
    trace: Optional[List],
) -> np.ndarray:
    size = metric.shape[0]
    points = np.arange(size)
    trials = keys.shape[0]
    support = mass > 0
    if np.count_nonzero(support) == 1:
        return np.full(trials, int(np.flatnonzero(support)[0]))

    thetas = thetas_from_keys(keys)
    i0, i1 = level_range(metric, eta)
    active = reduced_level_matrix(metric, eta, thetas)[1] if reduced else None

    with np.errstate(divide="ignore"):
        logp = np.tile(np.log(mass), (trials, 1))
    alive = np.ones(trials, dtype=bool)

    level = i0
    while np.any(alive):
        if level > i1 + MAX_EXTRA_LEVELS:
            raise RuntimeError(f"Finite-metric hash did not collapse by level {level}")
        rows = alive.copy()
        if active is not None and level <= i1:
            rows &= active[:, level - i0]
        if np.any(rows):
            idx = np.flatnonzero(rows)
            w = np.exp(-eta * (level + thetas[idx]))
            balls = metric[None, :, :] <= w[:, None, None]
            ball_sizes = balls.sum(axis=2).astype(np.float64)
            post = np.exp(logp[idx] - logp[idx].max(axis=1, keepdims=True))
            p_hat = np.einsum("txy,ty->tx", balls, post / ball_sizes)
            race_variables = exponential_from_keys(keys[idx], level, points)
            if trace is not None:
                trace.append((level, race_variables.copy()))
            winners, _ = race(p_hat, race_variables)
            keep = balls[np.arange(idx.size), winners]
            updated = np.where(keep, logp[idx] - np.log(ball_sizes), -np.inf)
            logp[idx] = updated - _logsumexp_rows(updated)
            alive[idx] = np.isfinite(logp[idx]).sum(axis=1) > 1
        level += 1
    return np.argmax(np.isfinite(logp), axis=1)


def hash_metric_batch(
    space: CostSpace,
    P: DiscreteDistribution,
    keys: np.ndarray,
    eta: float = DEFAULT_ETA,
    reduced: bool = False,
    trace: Optional[List] = None,
) -> np.ndarray:
    """
    Hash value of P under every key in ``keys``. Chunks of keys are processed
    independently; each key's output depends only on that key and P.
    """
    eta = _check_eta(eta)
    metric = np.asarray(space.metric_matrix(), dtype=np.float64)
    keys = np.asarray(keys, dtype=np.uint64)
    chunk = max(1, CHUNK_CELLS // max(1, space.size * space.size))
    parts = [
        _hash_chunk(metric, P.mass, keys[start:start + chunk], eta, reduced, trace)
        for start in range(0, keys.shape[0], chunk)
    ]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def lsh_finite_metric(
    space: CostSpace,
    P: DiscreteDistribution,
    seed: Union[SeedContext, int],
    reduced: bool = False,
    eta: float = DEFAULT_ETA,
    trace: Optional[List] = None,
) -> int:
    """
    Hashes P to a point of the space. Deterministic in (seed, P); over random
    seeds the output is distributed as P, and two distributions hashed with
    the same seed land close together in expectation.

    Args:
        space: Finite metric space (the hash runs on ``space.metric_matrix()``).
        P: Distribution on the space.
        seed: Seed context; its key drives theta and all race variables.
        reduced: Skip levels at which no pair of points can be separated.
        eta: Geometric rate of the radii.
        trace: If given, receives (level, race variables) for every level read.
    """
    return int(hash_metric_batch(space, P, as_seed(seed).keys, eta=eta, reduced=reduced, trace=trace)[0])
