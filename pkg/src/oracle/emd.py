"""
Exact two-marginal quantities: optimal transport cost via network simplex,
total variation, and the quantile (staircase) coupling on ordered spaces.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
import ot

from src.config import get_settings
from src.core.distributions import DiscreteDistribution, TransportPlan, require_same_space
from src.core.seeding import SeedContext, as_seed, uniform_from_keys
from src.core.spaces import CostSpace
from src.exceptions import OracleLimitError, ZeroRowMassError
from src.logger_config import setup_logger

logger = setup_logger(__name__)

QUANTIZATION_BITS = 40
NUM_ITER_MAX = 10_000_000


@dataclass(frozen=True, eq=False)
class EmdResult:
    value: float
    plan: TransportPlan


def _quantize(mass: np.ndarray) -> np.ndarray:
    """Rounds masses to multiples of 2^-40 that still sum to exactly 1."""
    scale = float(1 << QUANTIZATION_BITS)
    ticks = np.round(mass * scale).astype(np.int64)
    ticks[np.argmax(ticks)] += (1 << QUANTIZATION_BITS) - ticks.sum()
    return ticks / scale


def solve_transport(a: np.ndarray, b: np.ndarray, cost: np.ndarray) -> np.ndarray:
    """
    Optimal vertex plan for marginals a, b under the given cost matrix.

    Raises:
        OracleLimitError: If either side exceeds the configured support limit.
    """
    limit = get_settings().oracle_max_support
    if a.size > limit or b.size > limit:
        raise OracleLimitError(
            f"support: sizes {a.size} x {b.size} exceed the oracle limit of {limit}"
        )
    if a.size == 1 or b.size == 1:
        return np.outer(a, b)
    plan, log = ot.emd(a, b, np.ascontiguousarray(cost, dtype=np.float64), numItermax=NUM_ITER_MAX, log=True)
    if log.get("warning"):
        logger.warning(f"Network simplex reported: {log['warning']}")
    return plan


def emd_exact(
    P: DiscreteDistribution,
    Q: DiscreteDistribution,
    space: Optional[CostSpace] = None,
    quantize: bool = False,
) -> EmdResult:
    """
    Optimal transport cost C*(P, Q) and an optimal plan over supp(P) x supp(Q).

    Args:
        P, Q: Distributions on the same space.
        space: Optional space to check against; defaults to P's space.
        quantize: Snap masses to multiples of 2^-40 before solving so plans
            from different inputs can be compared without pivot ambiguity.

    Returns:
        EmdResult: value and the optimal TransportPlan.
    """
    space = require_same_space(P, Q, space=space)
    rows, cols = P.support, Q.support
    a, b = P.mass[rows], Q.mass[cols]
    if quantize:
        a, b = _quantize(a), _quantize(b)
    cost = space.cost_matrix()[np.ix_(rows, cols)]
    joint = solve_transport(a, b, cost)
    value = float(np.sum(joint * cost))
    return EmdResult(value=value, plan=TransportPlan(rows=rows, cols=cols, joint=joint, cost=value))


def tv_distance(P: DiscreteDistribution, Q: DiscreteDistribution) -> float:
    require_same_space(P, Q)
    return float(0.5 * np.abs(P.mass - Q.mass).sum())


def independent_cost(P: DiscreteDistribution, Q: DiscreteDistribution) -> float:
    """Expected cost under the product coupling P x Q."""
    space = require_same_space(P, Q)
    return float(P.mass @ space.cost_matrix() @ Q.mass)


def sorted_cdf(mass: np.ndarray, order: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(mass[order])
    last = np.flatnonzero(mass[order] > 0)[-1]
    cdf[last:] = 1.0
    return cdf


def quantile_plan(P: DiscreteDistribution, Q: DiscreteDistribution, space: Optional[CostSpace] = None) -> TransportPlan:
    """
    The quantile coupling (F_P^{-1}(U), F_Q^{-1}(U)) as an explicit plan,
    built by merging the two CDF staircases.

    Raises:
        UnorderedSpaceError: If the space has no total order.
    """
    space = require_same_space(P, Q, space=space)
    order = np.argsort(space.order_values(), kind="stable")
    cdf_p, cdf_q = sorted_cdf(P.mass, order), sorted_cdf(Q.mass, order)
    breaks = np.unique(np.concatenate(([0.0], cdf_p, cdf_q)))
    lengths = np.diff(breaks)
    mids = breaks[:-1] + 0.5 * lengths
    xs = order[np.searchsorted(cdf_p, mids, side="left")]
    ys = order[np.searchsorted(cdf_q, mids, side="left")]
    joint = np.zeros((space.size, space.size))
    np.add.at(joint, (xs, ys), lengths)
    return TransportPlan.from_dense(joint, space.cost_matrix())


def quantile_cost_1d(P: DiscreteDistribution, Q: DiscreteDistribution, space: Optional[CostSpace] = None) -> float:
    return quantile_plan(P, Q, space).cost


def conditional_sample_batch(
    plan: TransportPlan, given: np.ndarray, keys: np.ndarray, path: Sequence = ("cond",)
) -> np.ndarray:
    """
    For each (given_x, key) draws y with probability plan(x, y) / rowmass(x)
    using one uniform per key and CDF inversion.

    Raises:
        ZeroRowMassError: If some given point has no mass in the plan.
    """
    given = np.asarray(given, dtype=np.int64)
    lookup = {int(x): pos for pos, x in enumerate(plan.rows)}
    row_mass = plan.row_mass
    try:
        positions = np.array([lookup[int(x)] for x in given], dtype=np.int64)
    except KeyError as e:
        raise ZeroRowMassError(f"given_x: point {e.args[0]} has zero row mass in the plan")
    if np.any(row_mass[positions] <= 0):
        raise ZeroRowMassError("given_x: zero row mass in the plan")
    cdf = np.cumsum(plan.joint, axis=1)
    cdf = cdf / cdf[:, -1:]
    u = uniform_from_keys(keys, *path)
    picks = (cdf[positions] < u[:, None]).sum(axis=1)
    return plan.cols[picks]


def conditional_sample(
    plan: TransportPlan, given_x: int, seed: Union[SeedContext, int], path: Sequence = ("cond",)
) -> int:
    if isinstance(path, str):
        path = (path,)
    return int(conditional_sample_batch(plan, np.array([given_x]), as_seed(seed).keys, tuple(path))[0])
