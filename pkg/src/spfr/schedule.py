import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from src.core.seeding import SeedContext, as_seed, uniform_from_keys
from src.core.spaces import CostSpace
from src.exceptions import ParameterRangeError, SpaceValidationError

DEFAULT_ETA = 1.56


@dataclass(frozen=True)
class ScaleSchedule:
    """Radii w_i = exp(-eta (i + theta)) for the listed levels, ascending."""

    eta: float
    theta: float
    levels: Tuple[int, ...]
    reduced: bool = False

    def radius(self, level: int) -> float:
        return math.exp(-self.eta * (level + self.theta))


def thetas_from_keys(keys: np.ndarray) -> np.ndarray:
    """Phase per key, from derive_uniform(seed, ("theta",)), folded into [0, 1)."""
    u = uniform_from_keys(keys, "theta")
    return np.where(u >= 1.0, 0.0, u)


def level_range(metric: np.ndarray, eta: float) -> Tuple[int, int]:
    """
    (i0, i1) with the first radius at least the diameter and the last one
    below the smallest positive distance.
    """
    positive = metric[metric > 0]
    if positive.size == 0:
        raise SpaceValidationError("space: schedule needs at least two points at positive distance")
    i0 = math.floor(-math.log(float(positive.max())) / eta) - 1
    i1 = math.floor(-math.log(float(positive.min())) / eta) + 1
    return i0, i1


def _check_eta(eta: float) -> float:
    eta = float(eta)
    if not eta > 0 or not math.isfinite(eta):
        raise ParameterRangeError("eta", f"geometric rate must be positive, got {eta}")
    return eta


def reduced_level_matrix(metric: np.ndarray, eta: float, thetas: np.ndarray) -> Tuple[int, np.ndarray]:
    """
    Reduced levels for every phase: floor(-ln(e^{eta theta} d / 2) / eta) + 1
    over the distinct positive distances, value-clipped to [i0, i1].

    Returns:
        (i0, active) where active[t, i - i0] marks level i as used by phase t.
    """
    eta = _check_eta(eta)
    i0, i1 = level_range(metric, eta)
    distances = np.unique(metric[metric > 0])
    raw = np.floor((-eta * thetas[:, None] - np.log(distances[None, :] / 2.0)) / eta) + 1
    levels = np.clip(raw.astype(np.int64), i0, i1)
    active = np.zeros((thetas.size, i1 - i0 + 1), dtype=bool)
    rows = np.repeat(np.arange(thetas.size), distances.size)
    active[rows, (levels - i0).ravel()] = True
    return i0, active


def reduced_level_bound(size: int, eta: float = DEFAULT_ETA) -> float:
    """Upper bound |X| ln|X| / eta + 2|X| - 2 on the number of reduced levels."""
    return size * math.log(size) / eta + 2 * size - 2


def make_schedule(
    space: CostSpace,
    eta: float = DEFAULT_ETA,
    seed: Union[SeedContext, int] = 0,
    reduced: bool = False,
    metric: Optional[np.ndarray] = None,
) -> ScaleSchedule:
    """
    Level schedule for the finite-metric hash under one seed.

    Args:
        space: Space with at least two points.
        eta: Geometric rate of the radii.
        seed: Source of the phase theta.
        reduced: Keep only the levels at which some pair of points can be separated.
        metric: Override for the metric; defaults to ``space.metric_matrix()``.

    Raises:
        SpaceValidationError: On a single-point space (callers short-circuit).
    """
    eta = _check_eta(eta)
    metric = space.metric_matrix() if metric is None else metric
    theta = float(thetas_from_keys(as_seed(seed).keys)[0])
    i0, i1 = level_range(metric, eta)
    if not reduced:
        return ScaleSchedule(eta=eta, theta=theta, levels=tuple(range(i0, i1 + 1)), reduced=False)
    _, active = reduced_level_matrix(metric, eta, np.array([theta]))
    levels = tuple(int(i0 + k) for k in np.flatnonzero(active[0]))
    return ScaleSchedule(eta=eta, theta=theta, levels=levels, reduced=True)
