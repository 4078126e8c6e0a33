from src.ratio.estimator import (
    PairStat,
    RatioEstimate,
    estimate_ratio,
    estimate_truncated_ratio,
    hash_collection,
)
from src.ratio.instances import (
    circle_mixture_points,
    cycle_instance,
    epsilon_instance,
    grid_boundary_walk,
    grid_walk_bound,
    grid_walk_instance,
    mixture_instance,
)
from src.ratio.bounds import BOUND_KINDS, BoundParams, bound_calculator, unit_ball_volume
from src.ratio.transfer import line_isometry_test, ratio_transfer_bound

__all__ = [
    "PairStat",
    "RatioEstimate",
    "estimate_ratio",
    "estimate_truncated_ratio",
    "hash_collection",
    "circle_mixture_points",
    "cycle_instance",
    "epsilon_instance",
    "grid_boundary_walk",
    "grid_walk_bound",
    "grid_walk_instance",
    "mixture_instance",
    "BOUND_KINDS",
    "BoundParams",
    "bound_calculator",
    "unit_ball_volume",
    "line_isometry_test",
    "ratio_transfer_bound",
]
