import math
from typing import Callable, Optional, Union

import numpy as np

from src.core.spaces import EXPLICIT, CostSpace
from src.exceptions import SpaceValidationError

CostAccessor = Union[np.ndarray, Callable[[int, int], float]]

ISOMETRY_TOL = 1e-9


def _materialize(space: CostSpace, cost: CostAccessor) -> np.ndarray:
    if callable(cost):
        size = space.size
        return np.array([[float(cost(i, j)) for j in range(size)] for i in range(size)])
    matrix = np.asarray(cost, dtype=np.float64)
    if matrix.shape != (space.size, space.size):
        raise SpaceValidationError(f"cost: expected a {space.size}x{space.size} matrix, got {matrix.shape}")
    return matrix


def _sup_ratio(top: np.ndarray, bottom: np.ndarray) -> float:
    """sup over pairs with top > 0 of top / bottom; infinite if bottom vanishes there."""
    mask = top > 0
    if not np.any(mask):
        return 0.0
    if np.any(bottom[mask] <= 0):
        return math.inf
    return float(np.max(top[mask] / bottom[mask]))


def ratio_transfer_bound(space: CostSpace, c1: CostAccessor, c2: CostAccessor) -> float:
    """
    (sup c1/c2)(sup c2/c1) over x != y: the factor by which an optimal ratio
    under c2 can grow when the same coupling is measured under c1.
    """
    m1, m2 = _materialize(space, c1), _materialize(space, c2)
    off = ~np.eye(space.size, dtype=bool)
    forward = _sup_ratio(m1[off], m2[off])
    backward = _sup_ratio(m2[off], m1[off])
    if math.isinf(forward) or math.isinf(backward):
        return math.inf
    return forward * backward


def line_isometry_test(space: CostSpace) -> Optional[np.ndarray]:
    """
    Coordinates g with |g(x) - g(y)| = c(x, y) for all pairs, or None when the
    cost does not embed isometrically into the real line.

    Anchors x0 = 0 and its farthest point x1; every other point lies on the
    side of x1 exactly when |c(x0, x) - c(x0, x1)| = c(x, x1).
    """
    if space.kind != EXPLICIT:
        raise SpaceValidationError(f"kind: line isometry test needs an {EXPLICIT!r} space, got {space.kind!r}")
    cost = np.asarray(space.cost_matrix(), dtype=np.float64)
    if space.size == 1:
        return np.zeros(1)
    tol = ISOMETRY_TOL * max(1.0, float(cost.max()))
    from_anchor = cost[0]
    far = int(np.argmax(from_anchor))
    same_side = np.abs(np.abs(from_anchor - from_anchor[far]) - cost[far]) <= tol
    g = np.where(same_side, from_anchor, -from_anchor)
    if np.all(np.abs(np.abs(g[:, None] - g[None, :]) - cost) <= tol):
        return g
    return None
