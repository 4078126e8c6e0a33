import json
import os

import numpy as np
import pytest

from src.core.distributions import DiscreteDistribution, TransportPlan, require_same_space
from src.core.io import (
    dump_distribution_json,
    dump_space_json,
    load_distribution_json,
    load_space_json,
    read_json,
)
from src.core.spaces import discrete_metric_space, line_space, lp_grid_space
from src.exceptions import DistributionError, SpaceMismatchError


def test_mass_within_tolerance_is_renormalized():
    space = discrete_metric_space(3)
    P = DiscreteDistribution(space, [0.5, 0.5 + 5e-7, 0.0])
    assert P.mass.sum() == pytest.approx(1.0, abs=1e-15)
    assert not P.mass.flags.writeable


@pytest.mark.parametrize(
    "mass, fragment",
    [
        ([0.5, 0.6, 0.0], "sum"),
        ([1.5, -0.5, 0.0], "negative"),
        ([0.0, 0.0, 0.0], "zero"),
        ([1.0, 0.0], "expected 3"),
        ([np.nan, 1.0, 0.0], "finite"),
        (["a", 0.5, 0.5], "numbers"),
        ([{"x": 1}, 0.0, 0.0], "numbers"),
    ],
)
def test_invalid_mass_is_rejected(mass, fragment):
    with pytest.raises(DistributionError, match=fragment):
        DiscreteDistribution(discrete_metric_space(3), mass)


def test_constructors():
    space = discrete_metric_space(4)
    assert np.allclose(DiscreteDistribution.from_weights(space, [2, 0, 1, 1]).mass, [0.5, 0, 0.25, 0.25])
    assert DiscreteDistribution.delta(space, 2).is_delta()
    U = DiscreteDistribution.uniform(space, [0, 0, 3])
    assert np.allclose(U.mass, [2 / 3, 0, 0, 1 / 3])
    assert np.array_equal(U.support, [0, 3])
    assert U.support_size == 2
    assert U.expectation(np.arange(4.0)) == pytest.approx(1.0)
    with pytest.raises(DistributionError):
        DiscreteDistribution.from_weights(space, [0, 0, 0, 0])
    with pytest.raises(DistributionError, match="numbers"):
        DiscreteDistribution.from_weights(space, ["one", 1, 1, 1])


def test_require_same_space():
    a, b = lp_grid_space(1, 3), lp_grid_space(1, 3)
    P, Q = DiscreteDistribution.delta(a, 0), DiscreteDistribution.delta(b, 1)
    assert require_same_space(P, Q) is a
    R = DiscreteDistribution.delta(discrete_metric_space(4), 0)
    with pytest.raises(SpaceMismatchError, match="distribution 2"):
        require_same_space(P, Q, R)


def test_transport_plan_from_dense():
    cost = np.array([[0.0, 1.0], [1.0, 0.0]])
    plan = TransportPlan.from_dense(np.array([[0.25, 0.25], [0.0, 0.5]]), cost)
    assert plan.cost == pytest.approx(0.25)
    assert np.allclose(plan.row_mass, [0.5, 0.5])
    rows, cols, mass = plan.entries()
    assert list(zip(rows.tolist(), cols.tolist())) == [(0, 0), (0, 1), (1, 1)]
    assert np.allclose(plan.dense(2), [[0.25, 0.25], [0.0, 0.5]])


def test_distribution_file_resolves_space_relative_to_itself(tmp_path):
    space = line_space([0.0, 1.0, 4.0], q=2.0)
    (tmp_path / "data").mkdir()
    dump_space_json(space, str(tmp_path / "data" / "space.json"))
    P = DiscreteDistribution(space, [0.25, 0.0, 0.75])
    path = dump_distribution_json(P, str(tmp_path / "data" / "P.json"), "space.json")

    loaded = load_distribution_json(path)
    assert loaded.space.same_as(space)
    assert np.allclose(loaded.mass, P.mass)
    assert load_distribution_json(path, space).space is space


def test_missing_fields_and_bad_json(write_json, tmp_path):
    with pytest.raises(DistributionError, match="mass"):
        load_distribution_json(write_json("P.json", {"space": "space.json"}))
    with pytest.raises(DistributionError, match="space"):
        load_distribution_json(write_json("Q.json", {"mass": [1.0]}))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(json.JSONDecodeError):
        read_json(str(broken))
    with pytest.raises(OSError):
        load_space_json(os.path.join(str(tmp_path), "absent.json"))
