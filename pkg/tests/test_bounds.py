import math

import pytest

from src.exceptions import ParameterRangeError
from src.ratio import BOUND_KINDS, BoundParams, bound_calculator, unit_ball_volume


@pytest.mark.parametrize(
    "n, p, expected",
    [(2, 2.0, math.pi), (3, 2.0, 4.0 * math.pi / 3.0), (2, 1.0, 2.0), (3, math.inf, 8.0), (0, 3.0, 1.0), (1, 7.0, 2.0)],
)
def test_unit_ball_volume(n, p, expected):
    assert unit_ball_volume(n, p) == pytest.approx(expected)


def test_unit_ball_volume_rejects_bad_inputs():
    with pytest.raises(ParameterRangeError, match="n"):
        unit_ball_volume(-1, 2.0)
    with pytest.raises(ParameterRangeError, match="p"):
        unit_ball_volume(2, 0.5)


@pytest.mark.parametrize(
    "kind, params, expected",
    [
        ("finite-metric", {"size": 16}, 55.7 * (1.0 + math.log(16))),
        ("power-metric", {"size": 5, "q": 2.0}, 7.56 * 16.0),
        ("ultrametric", {}, 7.56),
        ("finite-collection", {"size": 8}, 23.1 * math.log(8)),
        ("circle", {"q": 1.0}, 2.0),
        ("circle", {"q": 0.5}, 40.54),
        ("circle", {"q": 2.0}, math.inf),
        ("circle-truncated", {"q": 2.0, "eta": 4.0}, 5.0),
        ("discrete-metric", {"s": 2}, 1.0),
        ("discrete-metric", {"s": 10}, 2.0),
        ("discrete-metric-lower", {"s": 4}, 1.5),
        ("line-grid", {"s": 5, "q": 1.0}, 1.0),
        ("line-grid-lower", {"s": 4, "q": 0.5}, 4.0 / 3.0),
        ("euclidean-lower", {"n": 1, "q": 0.5}, 2.0),
        ("euclidean-lower", {"n": 3, "q": 1.5}, math.inf),
        ("unit-ball-volume", {"n": 2, "p": 2.0}, math.pi),
    ],
)
def test_closed_form_bounds(kind, params, expected):
    assert bound_calculator(kind, **params) == pytest.approx(expected)


def test_snowflake_bounds():
    full = bound_calculator("snowflake", n=2, p=2.0, q=0.5)
    assert full == pytest.approx(15.12 * math.sqrt(2.47 * 2.0 / math.pi))
    assert full == pytest.approx(18.96, abs=0.01)
    assert bound_calculator("snowflake-simplified", n=2, p=2.0, q=0.5) == pytest.approx(21.1 * 2 ** 0.25)


def test_ball_lower_bound_beats_the_trivial_bound():
    assert bound_calculator("ball-lower", n=2, p=2.0, q=0.5) == pytest.approx(1.248, abs=1e-3)


def test_grid_bounds_grow_with_the_side():
    small = bound_calculator("torus-grid", n=2, p=2.0, q=1.0, s=3)
    large = bound_calculator("torus-grid", n=2, p=2.0, q=1.0, s=30)
    assert large > small
    assert bound_calculator("finite-grid", n=2, p=2.0, q=1.0, s=3) == pytest.approx(small * 28.66 / 57.32)


def test_params_object_and_overrides_combine():
    params = BoundParams(n=2, p=2.0, q=0.5)
    assert bound_calculator("snowflake", params) == bound_calculator("snowflake", params, q=0.5)
    assert params.Psi == pytest.approx(2.0 / math.pi)


@pytest.mark.parametrize(
    "kind, params, field",
    [
        ("snowflake", {"q": 1.0}, "q"),
        ("finite-metric", {}, "size"),
        ("finite-metric", {"size": 1}, "size"),
        ("circle-truncated", {"q": 0.5, "eta": 2.0}, "q"),
        ("finite-grid", {"s": 3, "q": 0.5}, "q"),
        ("ball-lower", {"n": 1, "q": 0.5}, "n"),
        ("snowflake", {"q": 0.5, "p": 0.5}, "p"),
    ],
)
def test_parameters_outside_the_statement_are_rejected(kind, params, field):
    with pytest.raises(ParameterRangeError) as info:
        bound_calculator(kind, **params)
    assert info.value.field == field


def test_unknown_kind_is_rejected():
    with pytest.raises(ParameterRangeError, match="unknown bound"):
        bound_calculator("hyperbolic")
    assert "snowflake" in BOUND_KINDS
