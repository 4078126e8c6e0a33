from src.couplings.samplers import (
    circle_sample,
    circle_sample_batch,
    circle_winners,
    permutations_from_keys,
    permuted_quantile_sample,
    permuted_quantile_sample_batch,
    quantile_sample,
    quantile_sample_batch,
)

__all__ = [
    "circle_sample",
    "circle_sample_batch",
    "circle_winners",
    "permutations_from_keys",
    "permuted_quantile_sample",
    "permuted_quantile_sample_batch",
    "quantile_sample",
    "quantile_sample_batch",
]
