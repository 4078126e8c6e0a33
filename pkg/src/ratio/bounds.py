"""
Closed-form upper and lower bounds on the optimal pairwise coupling ratio,
evaluated exactly as stated for each setting.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, Optional

from scipy.special import gammaln

from src.exceptions import ParameterRangeError


@dataclass(frozen=True)
class BoundParams:
    """
    Attributes:
        n: Dimension.
        p: Norm index in [1, inf].
        q: Cost exponent, c = d^q.
        s: Grid side (or discrete-metric size).
        size: |X| for finite-space bounds, |A| for finite-collection.
        eta: Truncation level for the truncated circle bound.
    """

    n: int = 1
    p: float = 2.0
    q: float = 1.0
    s: Optional[int] = None
    size: Optional[int] = None
    eta: Optional[float] = None

    @property
    def V_np(self) -> float:
        return unit_ball_volume(self.n, self.p)

    @property
    def Psi(self) -> float:
        """n^{1{p>2}(1 - 1/p)} V_{n-1,p} / V_{n,p}."""
        exponent = (1.0 - 1.0 / self.p) if self.p > 2 else 0.0
        return self.n ** exponent * unit_ball_volume(self.n - 1, self.p) / unit_ball_volume(self.n, self.p)


def unit_ball_volume(n: int, p: float) -> float:
    """Volume of the unit l_p ball in R^n: 2^n Gamma(1 + 1/p)^n / Gamma(1 + n/p)."""
    if n < 0:
        raise ParameterRangeError("n", f"dimension must be >= 0, got {n}")
    if not p >= 1:
        raise ParameterRangeError("p", f"norm index must be >= 1, got {p}")
    if n == 0:
        return 1.0
    if math.isinf(p):
        return 2.0 ** n
    return math.exp(n * math.log(2.0) + n * gammaln(1.0 + 1.0 / p) - gammaln(1.0 + n / p))


def _require(condition: bool, field: str, message: str, statement: str) -> None:
    if not condition:
        raise ParameterRangeError(field, message, statement)


def _need(params: BoundParams, field: str, statement: str):
    value = getattr(params, field)
    _require(value is not None, field, "required", statement)
    return value


def _spread(p: float) -> float:
    """max{1/p, 1 - 1/p}."""
    return max(1.0 / p, 1.0 - 1.0 / p)


def _snowflake(b: BoundParams) -> float:
    statement = "R^n snowflake upper bound (0 < q < 1)"
    _require(0 < b.q < 1, "q", f"need 0 < q < 1, got {b.q}", statement)
    _require(b.n >= 1, "n", f"need n >= 1, got {b.n}", statement)
    return 7.56 / (1.0 - b.q) * (2.47 * b.Psi) ** b.q


def _snowflake_simplified(b: BoundParams) -> float:
    statement = "R^n simplified snowflake upper bound (0 < q < 1)"
    _require(0 < b.q < 1, "q", f"need 0 < q < 1, got {b.q}", statement)
    _require(b.n >= 1, "n", f"need n >= 1, got {b.n}", statement)
    return 10.55 / (1.0 - b.q) * b.n ** (b.q * _spread(b.p))


def _finite_metric(b: BoundParams) -> float:
    statement = "finite metric upper bound 55.7(1 + ln|X|)"
    size = _need(b, "size", statement)
    _require(size >= 2, "size", f"need |X| >= 2, got {size}", statement)
    return 55.7 * (1.0 + math.log(size))


def _power_metric(b: BoundParams) -> float:
    statement = "finite power-of-metric upper bound 7.56(|X| - 1)^q"
    size = _need(b, "size", statement)
    _require(size >= 2, "size", f"need |X| >= 2, got {size}", statement)
    _require(b.q > 0, "q", f"need q > 0, got {b.q}", statement)
    return 7.56 * (size - 1) ** b.q


def _ultrametric(b: BoundParams) -> float:
    return 7.56


def _grid(constant: float, statement: str) -> Callable[[BoundParams], float]:
    def evaluate(b: BoundParams) -> float:
        s = _need(b, "s", statement)
        _require(s >= 1, "s", f"need s >= 1, got {s}", statement)
        _require(b.q >= 1, "q", f"need q >= 1, got {b.q}", statement)
        spread = b.n ** _spread(b.p)
        gamma = (1.0 if math.isinf(b.p) else b.n ** (1.0 / b.p)) * s
        return constant * spread * gamma ** (b.q - 1.0) * math.log(gamma / spread + 1.0)

    return evaluate


def _finite_collection(b: BoundParams) -> float:
    statement = "finite collection upper bound 23.1 ln|A|"
    size = _need(b, "size", statement)
    _require(size >= 2, "size", f"need |A| >= 2, got {size}", statement)
    return 23.1 * math.log(size)


def _circle(b: BoundParams) -> float:
    if b.q < 1:
        _require(b.q > 0, "q", f"need q > 0, got {b.q}", "circle upper bound")
        return 20.27 / (1.0 - b.q)
    if b.q == 1:
        return 2.0
    return math.inf


def _circle_truncated(b: BoundParams) -> float:
    statement = "truncated circle upper bound q eta^{1-1/q} + 1 (q >= 1)"
    eta = _need(b, "eta", statement)
    _require(b.q >= 1, "q", f"need q >= 1, got {b.q}", statement)
    _require(eta >= 0, "eta", f"need eta >= 0, got {eta}", statement)
    return b.q * eta ** (1.0 - 1.0 / b.q) + 1.0


def _discrete_size(b: BoundParams, statement: str) -> int:
    size = b.size if b.size is not None else b.s
    _require(size is not None, "s", "required", statement)
    _require(size >= 1, "s", f"need s >= 1, got {size}", statement)
    return size


def _discrete_metric(b: BoundParams) -> float:
    s = _discrete_size(b, "discrete metric upper bound min{2, (s+1)/3}")
    return min(2.0, (s + 1) / 3.0)


def _discrete_metric_lower(b: BoundParams) -> float:
    s = _discrete_size(b, "discrete metric lower bound 2(1 - 1/s)")
    return 2.0 * (1.0 - 1.0 / s)


def _line_grid(b: BoundParams) -> float:
    statement = "[0..s] upper bound for 0 < q < 1"
    s = _need(b, "s", statement)
    _require(s >= 1, "s", f"need s >= 1, got {s}", statement)
    if b.q >= 1:
        return 1.0
    _require(b.q > 0, "q", f"need q > 0, got {b.q}", statement)
    return min(9.34 / (1.0 - b.q), 55.7 * (math.log(s + 1) + 1.0), 2.0 * s ** b.q, s ** (1.0 - b.q))


def _line_grid_lower(b: BoundParams) -> float:
    statement = "[0..s] lower bound 2/(1 + s^{q-1})"
    s = _need(b, "s", statement)
    _require(s >= 1, "s", f"need s >= 1, got {s}", statement)
    if b.q >= 1:
        return 1.0
    return 2.0 / (1.0 + s ** (b.q - 1.0))


def _euclidean_lower(b: BoundParams) -> float:
    statement = "R^n lower bound table"
    _require(b.q > 0, "q", f"need q > 0, got {b.q}", statement)
    _require(b.n >= 1, "n", f"need n >= 1, got {b.n}", statement)
    if b.n == 1:
        return 2.0 if b.q < 1 else 1.0
    if b.q < 1:
        return max(2.0, 1.0 / (1000.0 * math.sqrt(1.0 - b.q)))
    return math.inf


def _ball_lower(b: BoundParams) -> float:
    statement = "R^n ball lower bound (n >= 2, 0 < q < 1)"
    _require(b.n >= 2, "n", f"need n >= 2, got {b.n}", statement)
    _require(0 < b.q < 1, "q", f"need 0 < q < 1, got {b.q}", statement)
    n, q, p = b.n, b.q, b.p
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    k = n / q + 1.0
    a = (k / unit_ball_volume(n, p)) ** (1.0 / k)
    correction = min(
        2.0 ** (-q) * n ** (q * inv_p + 1.0) / (n + q),
        max(a - 1.0, 0.0) + q * n ** (inv_p + 1.0) / (2.0 * (n + 1.0)),
    )
    return (1.0 - 1.0 / n) * ((n + q) / (n + q - n * q) * a + 1.0 / (n - 1.0) - correction)


def _unit_ball_volume(b: BoundParams) -> float:
    return unit_ball_volume(b.n, b.p)


BOUND_KINDS: Dict[str, Callable[[BoundParams], float]] = {
    "snowflake": _snowflake,
    "snowflake-simplified": _snowflake_simplified,
    "finite-metric": _finite_metric,
    "power-metric": _power_metric,
    "ultrametric": _ultrametric,
    "finite-grid": _grid(28.66, "finite grid upper bound (q >= 1)"),
    "torus-grid": _grid(57.32, "grid upper bound through the discrete torus (q >= 1)"),
    "finite-collection": _finite_collection,
    "circle": _circle,
    "circle-truncated": _circle_truncated,
    "discrete-metric": _discrete_metric,
    "discrete-metric-lower": _discrete_metric_lower,
    "line-grid": _line_grid,
    "line-grid-lower": _line_grid_lower,
    "euclidean-lower": _euclidean_lower,
    "ball-lower": _ball_lower,
    "unit-ball-volume": _unit_ball_volume,
}


def bound_calculator(kind: str, params: Optional[BoundParams] = None, **overrides) -> float:
    """
    Evaluates a named bound.

    Args:
        kind: One of BOUND_KINDS.
        params: Parameters; keyword overrides replace individual fields.

    Raises:
        ParameterRangeError: Unknown kind, or parameters outside the statement's range.
    """
    if kind not in BOUND_KINDS:
        raise ParameterRangeError("kind", f"unknown bound {kind!r}; expected one of {sorted(BOUND_KINDS)}")
    params = replace(params or BoundParams(), **overrides)
    if not params.p >= 1:
        raise ParameterRangeError("p", f"norm index must be >= 1, got {params.p}")
    return float(BOUND_KINDS[kind](params))
