"""
Monte Carlo estimation of the pairwise coupling ratio

    r = max over pairs of E[c(h(P_a), h(P_b))] / C*(P_a, P_b)

and of its truncated variant E[min{c / C*, eta_T}]. Every distribution is
hashed once per trial key; the same keys are shared by the whole collection.
"""

import math
import os
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from src.config import get_settings
from src.core.distributions import DiscreteDistribution, require_same_space
from src.core.seeding import SeedContext, trial_keys
from src.exceptions import ParameterRangeError
from src.hashing import Hasher
from src.logger_config import LOG_DIR, setup_logger
from src.oracle.emd import emd_exact
from src.utils import map_chunks, pairs

logger = setup_logger(
    __name__,
    log_file_path=os.path.join(LOG_DIR, "ratio_estimator.log"),
)

MIN_TRIALS = 100
CHUNK_KEYS = 4096
ZERO_COST_TOL = 1e-12


@dataclass(frozen=True)
class PairStat:
    """
    Per-pair statistics. ``ratio`` is mean / C* for plain estimates (NaN when
    the pair is excluded because C* = 0 and the mean is 0) and the truncated
    mean itself for truncated estimates.
    """

    first: int
    second: int
    mean_cost: float
    stderr: float
    c_star: float
    ratio: float
    ratio_stderr: float
    excluded: bool = False


@dataclass(frozen=True)
class RatioEstimate:
    pairs: List[PairStat]
    ratio: float
    ratio_stderr: float
    trials: int
    truncate: Optional[float] = None
    hasher: dict = field(default_factory=dict)

    @property
    def worst_pair(self) -> Optional[PairStat]:
        candidates = [p for p in self.pairs if not p.excluded]
        if not candidates:
            return None
        return max(candidates, key=lambda p: p.ratio)

    def within(self, bound: float, sigmas: float = 3.0) -> bool:
        """True if the estimated ratio does not exceed ``bound`` by more than ``sigmas`` standard errors."""
        return self.ratio <= bound + sigmas * self.ratio_stderr


def hash_collection(
    hasher: Hasher,
    collection: Sequence[DiscreteDistribution],
    keys: np.ndarray,
    threads: int = 1,
) -> np.ndarray:
    """Hash values of every distribution under every key, shape (len(collection), len(keys))."""
    space = require_same_space(*collection)
    rows = []
    for P in collection:
        parts = map_chunks(lambda k, P=P: hasher.sample_batch(space, P, k), keys, CHUNK_KEYS, threads)
        rows.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
    return np.stack(rows)


def _mean_and_stderr(values: np.ndarray) -> tuple:
    mean = float(values.mean())
    if values.size < 2 or not np.all(np.isfinite(values)):
        return mean, 0.0
    return mean, float(values.std(ddof=1) / math.sqrt(values.size))


def _pair_stat(i, j, costs, c_star, truncate) -> PairStat:
    mean, stderr = _mean_and_stderr(costs)
    if truncate is None:
        if c_star <= ZERO_COST_TOL:
            if mean == 0.0:
                return PairStat(i, j, mean, stderr, c_star, math.nan, 0.0, excluded=True)
            logger.warning(f"Pair ({i}, {j}) has C* = 0 but observed mean cost {mean}; ratio is infinite")
            return PairStat(i, j, mean, stderr, c_star, math.inf, 0.0)
        return PairStat(i, j, mean, stderr, c_star, mean / c_star, stderr / c_star)
    if c_star <= ZERO_COST_TOL:
        scaled = np.where(costs > 0, truncate, min(1.0, truncate))
    else:
        scaled = np.minimum(costs / c_star, truncate)
    t_mean, t_stderr = _mean_and_stderr(scaled)
    return PairStat(i, j, mean, stderr, c_star, t_mean, t_stderr)


def _estimate(
    hasher: Hasher,
    collection: Sequence[DiscreteDistribution],
    trials: int,
    master_seed: Union[SeedContext, int],
    truncate: Optional[float],
    threads: Optional[int],
) -> RatioEstimate:
    if len(collection) < 2:
        raise ParameterRangeError("dists", f"need at least 2 distributions, got {len(collection)}")
    if trials < MIN_TRIALS:
        raise ParameterRangeError("trials", f"need at least {MIN_TRIALS} trials, got {trials}")
    if truncate is not None and not truncate >= 0:
        raise ParameterRangeError("truncate", f"truncation level must be >= 0, got {truncate}")
    threads = get_settings(threads=threads).threads
    space = require_same_space(*collection)
    cost = space.cost_matrix()

    keys = trial_keys(master_seed, trials)
    hashes = hash_collection(hasher, collection, keys, threads)

    stats = []
    for i, j in pairs(len(collection)):
        c_star = emd_exact(collection[i], collection[j]).value
        stats.append(_pair_stat(i, j, cost[hashes[i], hashes[j]], c_star, truncate))

    included = [p for p in stats if not p.excluded]
    if included:
        worst = max(included, key=lambda p: p.ratio)
        ratio, ratio_stderr = worst.ratio, worst.ratio_stderr
    else:
        ratio, ratio_stderr = (1.0 if truncate is None else min(1.0, truncate)), 0.0

    logger.info(
        f"{hasher.name}: ratio {ratio:.6g} +/- {ratio_stderr:.3g} over {len(stats)} pairs, "
        f"{trials} trials" + ("" if truncate is None else f", truncated at {truncate}")
    )
    return RatioEstimate(
        pairs=stats,
        ratio=float(ratio),
        ratio_stderr=float(ratio_stderr),
        trials=trials,
        truncate=truncate,
        hasher=hasher.describe(),
    )


def estimate_ratio(
    hasher: Hasher,
    collection: Sequence[DiscreteDistribution],
    trials: int,
    master_seed: Union[SeedContext, int],
    threads: Optional[int] = None,
) -> RatioEstimate:
    """
    Estimates the pairwise coupling ratio of ``hasher`` on ``collection``.

    Args:
        hasher: Coupling sampler; all distributions share its trial keys.
        collection: At least two distributions on one space.
        trials: Number of child seeds derive(master_seed, ("trial", t)); at least 100.
        master_seed: Master seed.
        threads: Worker threads; the result does not depend on it.

    Returns:
        RatioEstimate: Per-pair statistics and the maximum ratio. Pairs with
        C* = 0 and mean 0 are excluded; a nonzero mean at C* = 0 is infinite.

    Raises:
        ParameterRangeError: Fewer than two distributions or 100 trials.
    """
    return _estimate(hasher, collection, trials, master_seed, None, threads)


def estimate_truncated_ratio(
    hasher: Hasher,
    collection: Sequence[DiscreteDistribution],
    eta_t: float,
    trials: int,
    master_seed: Union[SeedContext, int],
    threads: Optional[int] = None,
) -> RatioEstimate:
    """
    Max over pairs of E[min{c / C*, eta_t}], with 0/0 = 1 and t/0 = infinity
    before truncation. Never exceeds ``eta_t``.
    """
    return _estimate(hasher, collection, trials, master_seed, float(eta_t), threads)
