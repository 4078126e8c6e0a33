from src.spfr.schedule import DEFAULT_ETA, ScaleSchedule, make_schedule, reduced_level_bound
from src.spfr.kernels import BallKernel, circular_convolve, metric_ball_kernel, torus_kernel, torus_kernel_rows
from src.spfr.metric_hash import hash_metric_batch, lsh_finite_metric
from src.spfr.torus_hash import hash_torus_batch, lsh_torus, torus_eta
from src.spfr.ultrametric import build_minimax_ultrametric, minimax_path_distances
from src.spfr.chain import partial_marginals, spfr_disagreement_bound, spfr_trajectory_batch

__all__ = [
    "DEFAULT_ETA",
    "ScaleSchedule",
    "make_schedule",
    "reduced_level_bound",
    "BallKernel",
    "circular_convolve",
    "metric_ball_kernel",
    "torus_kernel",
    "torus_kernel_rows",
    "hash_metric_batch",
    "lsh_finite_metric",
    "hash_torus_batch",
    "lsh_torus",
    "torus_eta",
    "build_minimax_ultrametric",
    "minimax_path_distances",
    "partial_marginals",
    "spfr_disagreement_bound",
    "spfr_trajectory_batch",
]
