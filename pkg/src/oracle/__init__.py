from src.oracle.emd import (
    EmdResult,
    conditional_sample,
    conditional_sample_batch,
    emd_exact,
    independent_cost,
    quantile_cost_1d,
    quantile_plan,
    solve_transport,
    tv_distance,
)

__all__ = [
    "EmdResult",
    "conditional_sample",
    "conditional_sample_batch",
    "emd_exact",
    "independent_cost",
    "quantile_cost_1d",
    "quantile_plan",
    "solve_transport",
    "tv_distance",
]
