"""
Robust transport plans. The joint law of (h(P), h(Q)) under a shared seed
moves by at most r * eps in the 1-product cost when P or Q moves by eps,
whereas exact optimal plans can jump by a constant.
"""

import os
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from src.core.distributions import DiscreteDistribution, TransportPlan, require_same_space
from src.core.seeding import SeedContext, trial_keys
from src.core.spaces import CostSpace, explicit_metric_space
from src.exceptions import ParameterRangeError
from src.hashing import Hasher
from src.logger_config import LOG_DIR, setup_logger
from src.oracle.emd import emd_exact, solve_transport
from src.ratio.estimator import hash_collection

logger = setup_logger(
    __name__,
    log_file_path=os.path.join(LOG_DIR, "robust_plans.log"),
)

MIN_TRIALS = 1000

# (1, 0), (-1, 0), (2 eps^2, 1), (-2 eps^2, 1), (0, -1)
ALPHA_POINTS = (0, 1)
BETA_POINTS = (2, 4)
BETA_PRIME_POINTS = (3, 4)


@dataclass(frozen=True, eq=False)
class RobustExample:
    space: CostSpace
    alpha: DiscreteDistribution
    beta: DiscreteDistribution
    beta_prime: DiscreteDistribution
    eps: float


@dataclass(frozen=True)
class RobustReport:
    eps: float
    perturbation: float
    optimal_plan_distance: float
    robust_plan_distance: float
    coupled_cost: float
    coupled_cost_stderr: float
    trials: int


def robust_example(eps: float) -> RobustExample:
    """
    Five points in the plane with c = sqrt(l2 distance):
        P_alpha = (d(1,0) + d(-1,0)) / 2
        P_beta  = (d(2eps^2,1) + d(0,-1)) / 2
        P_beta' = (d(-2eps^2,1) + d(0,-1)) / 2
    C*(P_beta, P_beta') = eps.
    """
    if not eps > 0:
        raise ParameterRangeError("eps", f"perturbation must be positive, got {eps}")
    shift = 2.0 * eps * eps
    coords = np.array([[1.0, 0.0], [-1.0, 0.0], [shift, 1.0], [-shift, 1.0], [0.0, -1.0]])
    dist = np.linalg.norm(coords[:, None, :] - coords[None, :, :], axis=-1)
    space = explicit_metric_space(dist, q=0.5)
    return RobustExample(
        space=space,
        alpha=DiscreteDistribution.uniform(space, ALPHA_POINTS),
        beta=DiscreteDistribution.uniform(space, BETA_POINTS),
        beta_prime=DiscreteDistribution.uniform(space, BETA_PRIME_POINTS),
        eps=float(eps),
    )


def _empirical_plan(first: np.ndarray, second: np.ndarray, space: CostSpace) -> TransportPlan:
    joint = np.zeros((space.size, space.size))
    np.add.at(joint, (first, second), 1.0)
    return TransportPlan.from_dense(joint / first.size, space.cost_matrix())


def robust_plan(
    hasher: Hasher,
    P: DiscreteDistribution,
    Q: DiscreteDistribution,
    trials: int,
    master_seed: Union[SeedContext, int],
    threads: int = 1,
) -> TransportPlan:
    """Empirical joint law of (h(P), h(Q)) over child seeds derive(master, ("trial", t))."""
    if trials < MIN_TRIALS:
        raise ParameterRangeError("trials", f"need at least {MIN_TRIALS} trials, got {trials}")
    space = require_same_space(P, Q)
    hashes = hash_collection(hasher, [P, Q], trial_keys(master_seed, trials), threads)
    return _empirical_plan(hashes[0], hashes[1], space)


def plan_product_distance(g1: TransportPlan, g2: TransportPlan, space: CostSpace) -> float:
    """
    Optimal transport cost between two plans as laws on X^2 under
    (c x c)((x, y), (x', y')) = c(x, x') + c(y, y').
    """
    cost = space.cost_matrix()
    x1, y1, m1 = g1.entries()
    x2, y2, m2 = g2.entries()
    product = cost[np.ix_(x1, x2)] + cost[np.ix_(y1, y2)]
    joint = solve_transport(m1 / m1.sum(), m2 / m2.sum(), product)
    return float(np.sum(joint * product))


def _coupled_cost(a: np.ndarray, b: np.ndarray, space: CostSpace) -> Tuple[float, float]:
    costs = space.cost_matrix()[a, b]
    return float(costs.mean()), float(costs.std(ddof=1) / np.sqrt(costs.size))


def robust_report(
    eps: float,
    hasher: Hasher,
    trials: int,
    master_seed: Union[SeedContext, int],
    threads: int = 1,
) -> RobustReport:
    """
    Compares how far the optimal plans and the robust plans move when
    P_beta is replaced by P_beta'. The robust plans share trial keys, so
    their product distance is at most the mean coupled cost of (h(P_beta), h(P_beta')).
    """
    example = robust_example(eps)
    space = example.space
    optimal = plan_product_distance(
        emd_exact(example.alpha, example.beta).plan, emd_exact(example.alpha, example.beta_prime).plan, space
    )
    if trials < MIN_TRIALS:
        raise ParameterRangeError("trials", f"need at least {MIN_TRIALS} trials, got {trials}")
    hashes = hash_collection(
        hasher, [example.alpha, example.beta, example.beta_prime], trial_keys(master_seed, trials), threads
    )
    robust = plan_product_distance(
        _empirical_plan(hashes[0], hashes[1], space), _empirical_plan(hashes[0], hashes[2], space), space
    )
    mean, stderr = _coupled_cost(hashes[1], hashes[2], space)
    perturbation = emd_exact(example.beta, example.beta_prime).value
    logger.info(
        f"eps={eps}: optimal plans move {optimal:.6g}, robust plans move {robust:.6g} "
        f"(coupled cost {mean:.6g} +/- {stderr:.3g}, perturbation {perturbation:.6g})"
    )
    return RobustReport(
        eps=float(eps),
        perturbation=perturbation,
        optimal_plan_distance=optimal,
        robust_plan_distance=robust,
        coupled_cost=mean,
        coupled_cost_stderr=stderr,
        trials=trials,
    )
