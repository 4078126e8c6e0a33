from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from src.core.spaces import CostSpace
from src.exceptions import DistributionError, SpaceMismatchError

NORMALIZATION_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    """
    Probability vector over the points of a CostSpace.

    The constructor accepts masses whose total is within 1e-6 of 1 and
    renormalizes them exactly; use ``from_weights`` for arbitrary positive totals.
    """

    space: CostSpace
    mass: np.ndarray

    def __post_init__(self):
        try:
            mass = np.array(self.mass, dtype=np.float64, copy=True).reshape(-1)
        except (TypeError, ValueError):
            raise DistributionError("mass: entries must be numbers")
        if mass.size != self.space.size:
            raise DistributionError(f"mass: expected {self.space.size} entries, got {mass.size}")
        if not np.all(np.isfinite(mass)):
            raise DistributionError("mass: entries must be finite")
        if np.any(mass < 0):
            raise DistributionError(f"mass: negative entry at point {int(np.flatnonzero(mass < 0)[0])}")
        total = mass.sum()
        if total <= 0:
            raise DistributionError("mass: total mass is zero; support must be non-empty")
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise DistributionError(f"mass: entries sum to {total}, not 1 within {NORMALIZATION_TOL}")
        mass = mass / total
        mass.setflags(write=False)
        object.__setattr__(self, "mass", mass)

    @classmethod
    def from_weights(cls, space: CostSpace, weights: Iterable[float]) -> "DiscreteDistribution":
        try:
            weights = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=np.float64)
        except (TypeError, ValueError):
            raise DistributionError("weights: entries must be numbers")
        if np.any(weights < 0):
            raise DistributionError("weights: entries must be non-negative")
        total = weights.sum()
        if not total > 0:
            raise DistributionError("weights: total must be positive")
        return cls(space, weights / total)

    @classmethod
    def delta(cls, space: CostSpace, point: int) -> "DiscreteDistribution":
        mass = np.zeros(space.size)
        mass[int(point)] = 1.0
        return cls(space, mass)

    @classmethod
    def uniform(cls, space: CostSpace, points: Optional[Sequence[int]] = None) -> "DiscreteDistribution":
        mass = np.zeros(space.size)
        idx = np.arange(space.size) if points is None else np.asarray(points, dtype=np.int64)
        if idx.size == 0:
            raise DistributionError("points: uniform distribution needs at least one point")
        np.add.at(mass, idx, 1.0)
        return cls.from_weights(space, mass)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.mass > 0)

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.mass > 0))

    def is_delta(self) -> bool:
        return self.support_size == 1

    def expectation(self, values: np.ndarray) -> float:
        return float(np.dot(self.mass, values))


def require_same_space(*distributions: DiscreteDistribution, space: Optional[CostSpace] = None) -> CostSpace:
    """Returns the common space or raises SpaceMismatchError naming the first mismatch."""
    reference = space if space is not None else distributions[0].space
    for idx, dist in enumerate(distributions):
        if not dist.space.same_as(reference):
            raise SpaceMismatchError(
                f"distribution {idx}: lives on a different space ({dist.space.kind}, {dist.space.size} points)"
            )
    return reference


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """
    Joint mass over rows x cols (indices into the row and column spaces) and
    its cost. ``joint[a, b]`` is the mass moved from rows[a] to cols[b].
    """

    rows: np.ndarray
    cols: np.ndarray
    joint: np.ndarray
    cost: float

    @classmethod
    def from_dense(cls, joint: np.ndarray, cost_matrix: np.ndarray) -> "TransportPlan":
        joint = np.asarray(joint, dtype=np.float64)
        rows = np.flatnonzero(joint.sum(axis=1) > 0)
        cols = np.flatnonzero(joint.sum(axis=0) > 0)
        sub = joint[np.ix_(rows, cols)]
        cost = float(np.sum(sub * cost_matrix[np.ix_(rows, cols)]))
        return cls(rows=rows, cols=cols, joint=sub, cost=cost)

    @property
    def row_mass(self) -> np.ndarray:
        return self.joint.sum(axis=1)

    @property
    def col_mass(self) -> np.ndarray:
        return self.joint.sum(axis=0)

    def dense(self, n_rows: int, n_cols: Optional[int] = None) -> np.ndarray:
        out = np.zeros((n_rows, n_rows if n_cols is None else n_cols))
        out[np.ix_(self.rows, self.cols)] = self.joint
        return out

    def entries(self):
        """Non-zero (row point, col point, mass) triples in row-major order."""
        a, b = np.nonzero(self.joint > 0)
        return self.rows[a], self.cols[b], self.joint[a, b]
