import polars as pl


def get_ratio_pairs_schema() -> dict:
    """
    Returns the polars schema for per-pair ratio estimates.
    """
    return {
        "first": pl.Int64,
        "second": pl.Int64,
        "mean_cost": pl.Float64,
        "stderr": pl.Float64,
        "c_star": pl.Float64,
        "ratio": pl.Float64,
        "ratio_stderr": pl.Float64,
        "excluded": pl.Boolean,
    }


def get_hash_batch_schema() -> dict:
    """
    Returns the polars schema for hash values, one row per trial.
    """
    return {
        "trial": pl.Int64,
        "point": pl.Int64,
        "label": pl.Utf8,
    }


def get_sketch_schema() -> dict:
    return {
        "index": pl.Int64,
        "point_a": pl.Int64,
        "point_b": pl.Int64,
        "cost": pl.Float64,
    }


def get_online_schema() -> dict:
    return {
        "scheme": pl.Utf8,
        "mean_cost": pl.Float64,
        "stderr": pl.Float64,
        "trials": pl.Int64,
        "sum_c_star": pl.Float64,
        "ratio_hat": pl.Float64,
        "reference_ratio": pl.Float64,
        "closed_form": pl.Float64,
    }


def get_labeling_schema() -> dict:
    """
    Returns the polars schema for a rounded labeling, one row per object.
    """
    return {
        "object": pl.Int64,
        "label": pl.Int64,
        "assignment_cost": pl.Float64,
    }


def get_instance_schema() -> dict:
    return {
        "index": pl.Int64,
        "path": pl.Utf8,
        "support": pl.Utf8,
    }


def get_bounds_schema() -> dict:
    return {
        "kind": pl.Utf8,
        "value": pl.Float64,
        "n": pl.Int64,
        "p": pl.Float64,
        "q": pl.Float64,
        "s": pl.Int64,
        "size": pl.Int64,
        "eta": pl.Float64,
    }


def get_robust_schema() -> dict:
    return {
        "eps": pl.Float64,
        "perturbation": pl.Float64,
        "optimal_plan_distance": pl.Float64,
        "robust_plan_distance": pl.Float64,
        "coupled_cost": pl.Float64,
        "coupled_cost_stderr": pl.Float64,
        "trials": pl.Int64,
    }


def get_plan_schema() -> dict:
    """
    Returns the polars schema for transport plan entries.
    """
    return {
        "source": pl.Int64,
        "target": pl.Int64,
        "mass": pl.Float64,
        "cost": pl.Float64,
    }


def get_scalar_schema() -> dict:
    return {
        "name": pl.Utf8,
        "value": pl.Float64,
    }


def get_distance_schema() -> dict:
    """
    Returns the polars schema for a distance matrix in long form.
    """
    return {
        "row": pl.Int64,
        "col": pl.Int64,
        "distance": pl.Float64,
    }


def get_sweep_schema() -> dict:
    """
    Returns the polars schema for ratio sweeps over lower-bound instances.
    """
    return {
        "instance": pl.Utf8,
        "param": pl.Int64,
        "hasher": pl.Utf8,
        "ratio": pl.Float64,
        "ratio_stderr": pl.Float64,
        "lower_bound": pl.Float64,
        "upper_bound": pl.Float64,
        "trials": pl.Int64,
    }
