"""
Poisson functional representation on a finite space with counting base
measure. Only the first arrival per point matters, so a race variable
V[level, x] ~ Exp(1) stands in for the whole Poisson process at x.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from src.core.distributions import DiscreteDistribution, require_same_space
from src.core.seeding import SeedContext, as_seed, exponential_from_keys, trial_keys
from src.exceptions import DistributionError
from src.logger_config import setup_logger
from src.utils import map_chunks

logger = setup_logger(__name__)

CHUNK_CELLS = 1 << 22


@dataclass(frozen=True)
class RaceOutcome:
    winner: int
    winning_score: float


def race(weights: np.ndarray, race_variables: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    argmin_x V[x] / w[x] over points with w[x] > 0, row by row. Ties go to
    the lowest index. ``weights`` is (N,) or (T, N); ``race_variables`` is (T, N).
    """
    weights = np.broadcast_to(weights, race_variables.shape)
    with np.errstate(divide="ignore", invalid="ignore"):
        scores = np.where(weights > 0, race_variables / weights, np.inf)
    winners = np.argmin(scores, axis=1)
    return winners, scores[np.arange(scores.shape[0]), winners]


def pfr_select_batch(P: DiscreteDistribution, keys: np.ndarray, level: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    points = np.arange(P.space.size)
    return race(P.mass, exponential_from_keys(keys, level, points))


def pfr_select(P: DiscreteDistribution, seed: Union[SeedContext, int], level: int = 0) -> RaceOutcome:
    winners, scores = pfr_select_batch(P, as_seed(seed).keys, level)
    return RaceOutcome(winner=int(winners[0]), winning_score=float(scores[0]))


def dpc_closed_form(P: DiscreteDistribution, Q: DiscreteDistribution) -> float:
    """
    Poisson coupling distance under counting measure:
        1 - sum_x ( sum_y max{P(y)/P(x), Q(y)/Q(x)} )^{-1}
    with terms for P(x) = 0 or Q(x) = 0 contributing nothing and y ranging
    over the union of supports.
    """
    require_same_space(P, Q)
    common = np.flatnonzero((P.mass > 0) & (Q.mass > 0))
    union = np.flatnonzero((P.mass > 0) | (Q.mass > 0))
    if common.size == 0:
        return 1.0
    ratio_p = P.mass[union][None, :] / P.mass[common][:, None]
    ratio_q = Q.mass[union][None, :] / Q.mass[common][:, None]
    inner = np.maximum(ratio_p, ratio_q).sum(axis=1)
    return float(np.clip(1.0 - np.sum(1.0 / inner), 0.0, 1.0))


def universal_coupling_batch(collection: Sequence[DiscreteDistribution], keys: np.ndarray) -> np.ndarray:
    """
    Winners of every distribution under every key, shape (len(collection), len(keys)).
    One set of race variables per key is shared by the whole collection.
    """
    if len(collection) == 0:
        raise DistributionError("collection: at least one distribution is required")
    space = require_same_space(*collection)
    race_variables = exponential_from_keys(keys, 0, np.arange(space.size))
    return np.stack([race(P.mass, race_variables)[0] for P in collection])


def universal_coupling_sample(collection: Sequence[DiscreteDistribution], seed: Union[SeedContext, int]) -> List[int]:
    return [int(x) for x in universal_coupling_batch(collection, as_seed(seed).keys)[:, 0]]


def empirical_disagreement(
    P: DiscreteDistribution,
    Q: DiscreteDistribution,
    trials: int,
    seed: Union[SeedContext, int],
    threads: int = 1,
) -> Tuple[float, float]:
    """
    Monte Carlo estimate of P(pfr(P) != pfr(Q)) over child seeds
    derive(seed, ("trial", t)); returns (rate, standard error).
    """
    keys = trial_keys(seed, trials)
    chunk = max(1, CHUNK_CELLS // P.space.size)
    parts = map_chunks(lambda k: universal_coupling_batch([P, Q], k), keys, chunk, threads)
    winners = np.concatenate(parts, axis=1)
    disagree = (winners[0] != winners[1]).astype(np.float64)
    rate = float(disagree.mean())
    stderr = float(np.sqrt(rate * (1.0 - rate) / trials))
    logger.debug(f"Empirical disagreement {rate:.6f} +/- {stderr:.6f} over {trials} trials")
    return rate, stderr
