import hashlib
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, List, Mapping, Optional, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from src.exceptions import (
    AsymmetricCostError,
    NegativeCostError,
    NonzeroDiagonalError,
    PairwiseOTError,
    SpaceValidationError,
    TriangleInequalityError,
    UnorderedSpaceError,
    ZeroDistanceError,
)
from src.logger_config import setup_logger
from src.utils import parse_norm_index

logger = setup_logger(__name__)

EXPLICIT = "explicit-metric"
DISCRETE = "discrete-metric"
GRID = "lp-grid"
TORUS = "lp-torus"
CIRCLE = "circle"
KINDS = (EXPLICIT, DISCRETE, GRID, TORUS, CIRCLE)

SYMMETRY_TOL = 1e-12
TRIANGLE_TOL = 1e-9


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class CostSpace:
    """
    Finite point set with cost c(x, y) = d(x, y)^q.

    Points are dense indices 0..size-1. Grid and torus points are lattice
    vectors in row-major order; circle points are positions in [0, 1).
    Explicit spaces carry their distance matrix; the other kinds compute it
    from their parameters on first use.
    """

    kind: str
    size: int
    q: float = 1.0
    dist: Optional[np.ndarray] = None
    n: Optional[int] = None
    s: Optional[int] = None
    p: Optional[float] = None
    positions: Optional[np.ndarray] = None
    coords: Optional[np.ndarray] = None
    metric: bool = True

    @property
    def period(self) -> Optional[int]:
        return 2 * self.s + 1 if self.kind == TORUS else None

    @property
    def shape(self) -> Optional[tuple]:
        if self.kind == GRID:
            return (self.s + 1,) * self.n
        if self.kind == TORUS:
            return (self.period,) * self.n
        return None

    @cached_property
    def fingerprint(self) -> str:
        header = {
            "kind": self.kind,
            "size": self.size,
            "q": self.q,
            "n": self.n,
            "s": self.s,
            "p": None if self.p is None else repr(self.p),
            "metric": self.metric,
        }
        digest = hashlib.sha1(json.dumps(header, sort_keys=True).encode("utf-8"))
        if self.dist is not None:
            digest.update(np.ascontiguousarray(self.dist).tobytes())
        if self.positions is not None:
            digest.update(np.ascontiguousarray(self.positions).tobytes())
        return digest.hexdigest()

    def same_as(self, other: "CostSpace") -> bool:
        return self is other or self.fingerprint == other.fingerprint

    @cached_property
    def lattice(self) -> Optional[np.ndarray]:
        """Integer coordinates of grid/torus points, shape (size, n)."""
        if self.shape is None:
            return None
        return np.indices(self.shape).reshape(self.n, -1).T.copy()

    def distance_matrix(self) -> np.ndarray:
        return self._distance

    @cached_property
    def _distance(self) -> np.ndarray:
        if self.kind == EXPLICIT:
            return self.dist
        if self.kind == DISCRETE:
            d = 1.0 - np.eye(self.size)
        elif self.kind == GRID:
            d = _lp_cdist(self.lattice.astype(np.float64), self.lattice.astype(np.float64), self.p)
        elif self.kind == TORUS:
            diff = np.abs(self.lattice[:, None, :] - self.lattice[None, :, :])
            diff = np.minimum(diff, self.period - diff).astype(np.float64)
            d = _lp_norm(diff, self.p)
        elif self.kind == CIRCLE:
            gap = np.abs(self.positions[:, None] - self.positions[None, :])
            d = np.minimum(gap, 1.0 - gap)
        else:
            raise SpaceValidationError(f"kind: unsupported space kind {self.kind!r}")
        return _readonly(d)

    def cost_matrix(self) -> np.ndarray:
        return self._cost

    @cached_property
    def _cost(self) -> np.ndarray:
        d = self._distance
        if self.q == 1.0:
            return d
        return _readonly(np.power(d, self.q))

    def metric_matrix(self) -> np.ndarray:
        """
        Metric the locality sensitive hashes run on: the cost itself when it is
        a metric (q <= 1 on a metric, or a non-metric cost taken as given),
        otherwise the underlying distance d.
        """
        if self.q <= 1.0 or not self.metric:
            return self._cost
        return self._distance

    @cached_property
    def max_distance(self) -> float:
        return float(self._distance.max()) if self.size > 1 else 0.0

    @cached_property
    def min_positive_distance(self) -> float:
        positive = self._distance[self._distance > 0]
        return float(positive.min()) if positive.size else math.inf

    def labels(self) -> List[Any]:
        if self.lattice is not None:
            return [tuple(int(v) for v in row) for row in self.lattice]
        if self.kind == CIRCLE:
            return [float(x) for x in self.positions]
        if self.coords is not None:
            return [float(x) for x in self.coords]
        return list(range(self.size))

    @property
    def is_ordered(self) -> bool:
        if self.kind == GRID:
            return self.n == 1
        if self.kind == DISCRETE:
            return True
        return self.kind == EXPLICIT and self.coords is not None

    def order_values(self) -> np.ndarray:
        """Coordinate used to sort points for quantile couplings."""
        if not self.is_ordered:
            raise UnorderedSpaceError(
                f"space: kind {self.kind!r} carries no total order on its points"
            )
        if self.kind == GRID:
            return self.lattice[:, 0].astype(np.float64)
        if self.kind == DISCRETE:
            return np.arange(self.size, dtype=np.float64)
        return np.asarray(self.coords, dtype=np.float64)

    def index_of(self, label: Sequence[int]) -> int:
        """Row-major index of a lattice point."""
        return int(np.ravel_multi_index(tuple(int(v) for v in label), self.shape))


def _lp_norm(diff: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p):
        return diff.max(axis=-1)
    if p == 1.0:
        return diff.sum(axis=-1)
    return np.power(np.power(diff, p).sum(axis=-1), 1.0 / p)


def _lp_cdist(a: np.ndarray, b: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p):
        return cdist(a, b, metric="chebyshev")
    return cdist(a, b, metric="minkowski", p=p)


def check_cost_matrix(dist: np.ndarray, metric: bool = True) -> None:
    """
    Validates a square cost matrix. Each failure type raises its own error.

    Raises:
        SpaceValidationError: Non-square or non-finite input.
        AsymmetricCostError, NegativeCostError, NonzeroDiagonalError,
        ZeroDistanceError, TriangleInequalityError.
    """
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise SpaceValidationError(f"dist: expected a square matrix, got shape {dist.shape}")
    if not np.all(np.isfinite(dist)):
        raise SpaceValidationError("dist: entries must be finite")
    if np.any(dist < 0):
        i, j = np.argwhere(dist < 0)[0]
        raise NegativeCostError(f"dist[{i}][{j}]: negative entry {dist[i, j]}")
    diagonal = np.diag(dist)
    if np.any(diagonal != 0):
        i = int(np.flatnonzero(diagonal != 0)[0])
        raise NonzeroDiagonalError(f"dist[{i}][{i}]: diagonal entry must be 0, got {diagonal[i]}")
    asym = np.abs(dist - dist.T) > SYMMETRY_TOL * np.maximum(1.0, np.abs(dist))
    if np.any(asym):
        i, j = np.argwhere(asym)[0]
        raise AsymmetricCostError(f"dist[{i}][{j}]: {dist[i, j]} differs from dist[{j}][{i}] = {dist[j, i]}")
    if dist.shape[0] > 1 and not np.any(dist > 0):
        raise SpaceValidationError("dist: cost must not be the constant zero function")
    if not metric:
        return
    off_diagonal_zero = (dist == 0) & ~np.eye(dist.shape[0], dtype=bool)
    if np.any(off_diagonal_zero):
        i, j = np.argwhere(off_diagonal_zero)[0]
        raise ZeroDistanceError(f"dist[{i}][{j}]: distinct points at distance 0 under the metric flag")
    for k in range(dist.shape[0]):
        violation = dist > dist[:, k, None] + dist[None, k, :] + TRIANGLE_TOL
        if np.any(violation):
            i, j = np.argwhere(violation)[0]
            raise TriangleInequalityError(
                f"dist[{i}][{j}]: {dist[i, j]} exceeds path through {k} ({dist[i, k] + dist[k, j]})"
            )


def _check_q(q: float) -> float:
    q = float(q)
    if not q > 0 or not math.isfinite(q):
        raise SpaceValidationError(f"q: exponent must be a positive real, got {q}")
    return q


def explicit_metric_space(
    dist: Any, q: float = 1.0, metric: bool = True, coords: Optional[Sequence[float]] = None
) -> CostSpace:
    matrix = np.asarray(dist, dtype=np.float64)
    check_cost_matrix(matrix, metric=metric)
    coords_array = None
    if coords is not None:
        coords_array = _readonly(coords)
        if coords_array.shape != (matrix.shape[0],):
            raise SpaceValidationError(f"coords: expected {matrix.shape[0]} entries, got {coords_array.shape}")
    space = CostSpace(
        kind=EXPLICIT, size=matrix.shape[0], q=_check_q(q), dist=_readonly(matrix), coords=coords_array, metric=metric
    )
    logger.debug(f"Validated explicit space with {space.size} points, q={space.q}, metric={metric}")
    return space


def line_space(coords: Sequence[float], q: float = 1.0) -> CostSpace:
    """Points on the real line with d(x, y) = |x - y|; an ordered explicit space."""
    values = np.asarray(coords, dtype=np.float64)
    if values.ndim != 1:
        raise SpaceValidationError("coords: line points must be a flat list of reals")
    return explicit_metric_space(np.abs(values[:, None] - values[None, :]), q=q, coords=values)


def discrete_metric_space(s: int, q: float = 1.0) -> CostSpace:
    if int(s) < 1:
        raise SpaceValidationError(f"s: discrete metric space needs at least one point, got {s}")
    return CostSpace(kind=DISCRETE, size=int(s), q=_check_q(q))


def _grid_params(n: int, s: int, p: Any) -> tuple:
    n, s = int(n), int(s)
    if n < 1:
        raise SpaceValidationError(f"n: dimension must be >= 1, got {n}")
    if s < 1:
        raise SpaceValidationError(f"s: side must be >= 1, got {s}")
    try:
        p = parse_norm_index(p)
    except ValueError as e:
        raise SpaceValidationError(f"p: {e}")
    return n, s, p


def lp_grid_space(n: int, s: int, p: Any = 2.0, q: float = 1.0) -> CostSpace:
    """The grid [0..s]^n with the l_p distance."""
    n, s, p = _grid_params(n, s, p)
    return CostSpace(kind=GRID, size=(s + 1) ** n, q=_check_q(q), n=n, s=s, p=p)


def lp_torus_space(n: int, s: int, p: Any = 2.0, q: float = 1.0) -> CostSpace:
    """The discrete torus [0..2s]^n (period 2s+1) into which [0..s]^n embeds isometrically."""
    n, s, p = _grid_params(n, s, p)
    return CostSpace(kind=TORUS, size=(2 * s + 1) ** n, q=_check_q(q), n=n, s=s, p=p)


def torus_for_grid(grid: CostSpace) -> CostSpace:
    if grid.kind == TORUS:
        return grid
    if grid.kind != GRID:
        raise SpaceValidationError(f"kind: expected {GRID!r} or {TORUS!r}, got {grid.kind!r}")
    return lp_torus_space(grid.n, grid.s, grid.p, grid.q)


def grid_to_torus(grid: CostSpace, torus: CostSpace) -> np.ndarray:
    """Torus index of every grid point under the identity embedding."""
    if grid.kind != GRID or torus.kind != TORUS or (grid.n, grid.s) != (torus.n, torus.s):
        raise SpaceValidationError("grid: expected an lp-grid and its matching lp-torus")
    return np.ravel_multi_index(tuple(grid.lattice.T), torus.shape)


def circle_space(positions: Sequence[float], q: float = 1.0) -> CostSpace:
    values = np.asarray(positions, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise SpaceValidationError("positions: expected a non-empty flat list")
    if np.any(values < 0) or np.any(values >= 1):
        raise SpaceValidationError("positions: circle points must lie in [0, 1)")
    if np.unique(values).size != values.size:
        raise ZeroDistanceError("positions: duplicate circle points")
    return CostSpace(kind=CIRCLE, size=values.size, q=_check_q(q), positions=_readonly(values))


def equispaced_circle(m: int, q: float = 1.0) -> CostSpace:
    return circle_space(np.arange(int(m)) / int(m), q=q)


def validate_space(raw: Mapping[str, Any]) -> CostSpace:
    """
    Builds a CostSpace from a JSON-style description, e.g.
    {"kind": "explicit-metric", "q": 0.5, "dist": [[...]]} or
    {"kind": "lp-grid", "n": 2, "s": 7, "p": 2, "q": 1}.

    Raises:
        SpaceValidationError: Unknown kind, missing or malformed fields, or an invalid matrix.
    """
    if not isinstance(raw, Mapping):
        raise SpaceValidationError(f"space: expected a JSON object, got {type(raw).__name__}")
    kind = raw.get("kind")
    q = raw.get("q", 1.0)
    try:
        if kind == EXPLICIT:
            if "dist" in raw:
                return explicit_metric_space(
                    raw["dist"], q=q, metric=bool(raw.get("metric", True)), coords=raw.get("coords")
                )
            return line_space(raw["coords"], q=q)
        if kind == DISCRETE:
            return discrete_metric_space(raw["s"], q=q)
        if kind == GRID:
            return lp_grid_space(raw["n"], raw["s"], raw.get("p", 2.0), q)
        if kind == TORUS:
            return lp_torus_space(raw["n"], raw["s"], raw.get("p", 2.0), q)
        if kind == CIRCLE:
            if "positions" in raw:
                return circle_space(raw["positions"], q=q)
            return equispaced_circle(raw["m"], q=q)
    except KeyError as e:
        raise SpaceValidationError(f"{e.args[0]}: required for kind {kind!r}")
    except PairwiseOTError:
        raise
    except (TypeError, ValueError) as e:
        raise SpaceValidationError(f"space: malformed {kind!r} description ({e})")
    raise SpaceValidationError(f"kind: unsupported space kind {kind!r}; expected one of {KINDS}")
