from src.core.seeding import (
    SeedContext,
    derive_exponential,
    derive_uniform,
    exponential_from_keys,
    master_keys,
    trial_keys,
    uniform_from_keys,
)
from src.core.spaces import (
    CostSpace,
    circle_space,
    discrete_metric_space,
    equispaced_circle,
    explicit_metric_space,
    line_space,
    lp_grid_space,
    lp_torus_space,
    validate_space,
)
from src.core.distributions import DiscreteDistribution, TransportPlan

__all__ = [
    "SeedContext",
    "derive_exponential",
    "derive_uniform",
    "exponential_from_keys",
    "master_keys",
    "trial_keys",
    "uniform_from_keys",
    "CostSpace",
    "circle_space",
    "discrete_metric_space",
    "equispaced_circle",
    "explicit_metric_space",
    "line_space",
    "lp_grid_space",
    "lp_torus_space",
    "validate_space",
    "DiscreteDistribution",
    "TransportPlan",
]
