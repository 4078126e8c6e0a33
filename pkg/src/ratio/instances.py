"""
Collections on which no coupling can beat a known pairwise ratio. Each
generator returns the collection together with the lower bound, so any
estimated ratio from ``estimate_ratio`` can be checked against it.
"""

import math
from typing import List, Sequence, Tuple

import numpy as np

from src.core.distributions import DiscreteDistribution
from src.core.spaces import CostSpace, equispaced_circle, explicit_metric_space, lp_grid_space
from src.exceptions import InstanceConditionError, ParameterRangeError
from src.utils import pairs

Collection = List[DiscreteDistribution]


def _check_points(space: CostSpace, points: Sequence[int], field: str) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64)
    bad = np.flatnonzero((points < 0) | (points >= space.size))
    if bad.size:
        raise InstanceConditionError(f"{field}: point {int(points[bad[0]])} is not in the space", int(bad[0]))
    return points


def cycle_instance(space: CostSpace, cycle: Sequence[int]) -> Tuple[Collection, float]:
    """
    P_i = uniform over the cycle points other than x_i. Lower bound
        2(k - 1) min_{i<j} c(x_i, x_j) / sum_i c(x_i, x_{i+1}),  x_{k+1} = x_1.

    Raises:
        ParameterRangeError: Fewer than 3 points.
        InstanceConditionError: A repeated point, reported with its position.
    """
    points = _check_points(space, cycle, "cycle")
    k = points.size
    if k < 3:
        raise ParameterRangeError("cycle", f"need at least 3 points, got {k}")
    _, first = np.unique(points, return_index=True)
    if first.size != k:
        dup = int(np.setdiff1d(np.arange(k), first)[0])
        raise InstanceConditionError(f"cycle: point {int(points[dup])} repeats", dup)

    cost = space.cost_matrix()
    collection = [DiscreteDistribution.uniform(space, np.delete(points, i)) for i in range(k)]
    closest = min(cost[points[i], points[j]] for i, j in pairs(k))
    perimeter = float(np.sum(cost[points, np.roll(points, -1)]))
    return collection, float(2 * (k - 1) * closest / perimeter)


def mixture_instance(space: CostSpace, points: Sequence[int]) -> Tuple[Collection, float]:
    """
    P_i = (delta_{x_i} + delta_{x_{i+k}}) / 2 for i = 1..k over a sequence of
    2k points (x_{2k+1} = x_1). Lower bound

        ( sum_i (c(x_i,x_{i+1}) + c(x_{i+k},x_{i+k+1})) / gap_i )^{-1} + 1,
        gap_i = c(x_i,x_{i+k+1}) + c(x_{i+k},x_{i+1}) - c(x_i,x_{i+1}) - c(x_{i+k},x_{i+k+1}),

    valid when every gap_i is positive.

    Raises:
        InstanceConditionError: Odd length, or gap_i <= 0 (``index`` is i, zero-based).
    """
    x = _check_points(space, points, "points")
    if x.size < 2 or x.size % 2:
        raise InstanceConditionError(f"points: need an even number of points, got {x.size}")
    k = x.size // 2
    cost = space.cost_matrix()
    ext = np.concatenate([x, x[:1]])

    total = 0.0
    for i in range(k):
        near = cost[ext[i], ext[i + 1]] + cost[ext[i + k], ext[i + k + 1]]
        far = cost[ext[i], ext[i + k + 1]] + cost[ext[i + k], ext[i + 1]]
        if not far > near:
            raise InstanceConditionError(
                f"points: crossing condition fails at i={i} ({far} <= {near})", i
            )
        total += near / (far - near)

    collection = []
    for i in range(k):
        mass = np.zeros(space.size)
        np.add.at(mass, [x[i], x[i + k]], 0.5)
        collection.append(DiscreteDistribution(space, mass))
    bound = math.inf if total == 0 else 1.0 / total + 1.0
    return collection, float(bound)


def epsilon_instance(eps: float) -> Tuple[CostSpace, Collection, float]:
    """
    Four points with c(0,2) = c(1,3) = 1 and every other off-diagonal cost
    eps; the sequence (0,0,0,1,1,2,3,3) gives the lower bound 1/(4 eps) + 1.
    The cost is not a metric for eps < 1/2.
    """
    if not 0 < eps < 1:
        raise ParameterRangeError("eps", f"must lie in (0, 1), got {eps}")
    dist = np.full((4, 4), float(eps))
    np.fill_diagonal(dist, 0.0)
    dist[0, 2] = dist[2, 0] = dist[1, 3] = dist[3, 1] = 1.0
    space = explicit_metric_space(dist, q=1.0, metric=False)
    collection, bound = mixture_instance(space, [0, 0, 0, 1, 1, 2, 3, 3])
    return space, collection, bound


def circle_mixture_points(k: int, q: float) -> Tuple[CostSpace, Collection, float]:
    """
    Mixture instance on 2k equispaced circle points x_i = i/(2k). The bound
    equals ((k - 1)^q - 1)/k + 1 and grows like k^{q-1}.
    """
    if k < 3:
        raise ParameterRangeError("k", f"need k >= 3 for a positive gap, got {k}")
    space = equispaced_circle(2 * k, q=q)
    collection, bound = mixture_instance(space, list(range(2 * k)))
    return space, collection, bound


def grid_boundary_walk(n: int, s: int) -> np.ndarray:
    """
    Lattice points x_1..x_{2k} on [0..s]^n, k = ns: x_1 = 0, each next point
    the lexicographically largest l1-neighbour of the previous one for i <= k,
    then x_i = (s, ..., s) - x_{i-k}.
    """
    if n < 2 or s < 1:
        raise ParameterRangeError("n", f"grid walk needs n >= 2 and s >= 1, got n={n}, s={s}")
    k = n * s
    walk = [np.zeros(n, dtype=np.int64)]
    for _ in range(1, k):
        prev = walk[-1]
        neighbours = []
        for axis in range(n):
            for step in (-1, 1):
                y = prev.copy()
                y[axis] += step
                if 0 <= y[axis] <= s:
                    neighbours.append(tuple(int(v) for v in y))
        walk.append(np.array(max(neighbours), dtype=np.int64))
    first = np.stack(walk)
    return np.concatenate([first, s - first])


def grid_walk_instance(n: int, s: int, p: float = 2.0, q: float = 1.0) -> Tuple[CostSpace, Collection, float]:
    space = lp_grid_space(n, s, p, q)
    walk = grid_boundary_walk(n, s)
    indices = [space.index_of(point) for point in walk]
    collection, bound = mixture_instance(space, indices)
    return space, collection, bound


def grid_walk_bound(n: int, s: int, p: float, q: float) -> float:
    """((n - 1)^{q/p} s^q - 1)/(ns) + 1; the walk instance's bound is at least this."""
    scale = 1.0 if math.isinf(p) else (n - 1) ** (q / p)
    return (scale * s ** q - 1.0) / (n * s) + 1.0
