import math

import numpy as np
import pytest

from src.core.distributions import DiscreteDistribution
from src.core.spaces import discrete_metric_space, line_space
from src.exceptions import InstanceConditionError, ParameterRangeError
from src.hashing import Hasher
from src.ratio import (
    circle_mixture_points,
    cycle_instance,
    epsilon_instance,
    estimate_ratio,
    estimate_truncated_ratio,
    grid_boundary_walk,
    grid_walk_bound,
    grid_walk_instance,
    mixture_instance,
)


# Instances


def test_cycle_instance_on_the_discrete_metric():
    space = discrete_metric_space(4)
    collection, bound = cycle_instance(space, [0, 1, 2, 3])
    assert bound == pytest.approx(1.5)
    assert len(collection) == 4
    assert collection[0].mass[0] == 0.0
    assert np.allclose(collection[0].mass[1:], 1.0 / 3.0)


def test_cycle_instance_reports_the_repeated_position():
    with pytest.raises(InstanceConditionError) as info:
        cycle_instance(discrete_metric_space(3), [0, 1, 0])
    assert info.value.index == 2
    with pytest.raises(ParameterRangeError):
        cycle_instance(discrete_metric_space(3), [0, 1])
    with pytest.raises(InstanceConditionError, match="not in the space"):
        cycle_instance(discrete_metric_space(3), [0, 1, 5])


def test_mixture_instance_checks_the_crossing_condition():
    space = line_space([0.0, 1.0, 2.0, 3.0])
    with pytest.raises(InstanceConditionError) as info:
        mixture_instance(space, [0, 1, 2, 3])
    assert info.value.index == 1
    with pytest.raises(InstanceConditionError, match="even"):
        mixture_instance(space, [0, 1, 2])


def test_epsilon_instance_bound():
    space, collection, bound = epsilon_instance(0.1)
    assert bound == pytest.approx(3.5)
    assert len(collection) == 4
    assert not space.metric
    assert np.allclose(collection[0].mass, [0.5, 0.5, 0.0, 0.0])
    with pytest.raises(ParameterRangeError, match="eps"):
        epsilon_instance(1.0)


@pytest.mark.parametrize("k, q, expected", [(4, 2.0, 3.0), (3, 1.0, 4.0 / 3.0), (5, 1.5, 2.4)])
def test_circle_mixture_bound(k, q, expected):
    space, collection, bound = circle_mixture_points(k, q)
    assert space.size == 2 * k
    assert len(collection) == k
    assert bound == pytest.approx(expected)


def test_grid_boundary_walk():
    walk = grid_boundary_walk(2, 2)
    assert [tuple(p) for p in walk] == [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]


def test_grid_walk_instance_beats_its_closed_form():
    space, collection, bound = grid_walk_instance(2, 3, 2.0, 1.0)
    assert len(collection) == 6
    assert bound >= grid_walk_bound(2, 3, 2.0, 1.0) - 1e-12


# Estimator


def test_poisson_on_the_cycle_matches_its_closed_form():
    space = discrete_metric_space(4)
    collection, bound = cycle_instance(space, [0, 1, 2, 3])
    estimate = estimate_ratio(Hasher("poisson"), collection, 20_000, 5)
    assert len(estimate.pairs) == 6
    assert abs(estimate.ratio - bound) <= 4.5 * estimate.ratio_stderr + 0.05
    assert estimate.hasher == {"algo": "poisson"}


def test_no_coupling_beats_the_epsilon_instance():
    _, collection, bound = epsilon_instance(0.1)
    estimate = estimate_ratio(Hasher("poisson"), collection, 5000, 1)
    assert estimate.ratio >= bound - 4.5 * estimate.ratio_stderr
    assert estimate.worst_pair is not None


def test_identical_pairs_are_excluded():
    space = discrete_metric_space(3)
    P = DiscreteDistribution.uniform(space)
    estimate = estimate_ratio(Hasher("poisson"), [P, P], 200, 0)
    assert estimate.pairs[0].excluded
    assert math.isnan(estimate.pairs[0].ratio)
    assert estimate.ratio == 1.0
    assert estimate.worst_pair is None
    truncated = estimate_truncated_ratio(Hasher("poisson"), [P, P], 0.5, 200, 0)
    assert truncated.ratio == 0.5


def test_truncated_ratio_never_exceeds_the_truncation(random_metric_space, random_distribution):
    space = random_metric_space(5)
    collection = [random_distribution(space, min_support=2) for _ in range(3)]
    estimate = estimate_truncated_ratio(Hasher("metric"), collection, 3.0, 1000, 2)
    assert estimate.truncate == 3.0
    assert all(p.ratio <= 3.0 for p in estimate.pairs)


def test_estimate_does_not_depend_on_threads(random_distribution):
    space = line_space([0.0, 1.0, 2.0, 4.0])
    collection = [random_distribution(space, min_support=2) for _ in range(3)]
    single = estimate_ratio(Hasher("quantile"), collection, 9000, 3, threads=1)
    pooled = estimate_ratio(Hasher("quantile"), collection, 9000, 3, threads=4)
    assert single.ratio == pooled.ratio
    assert [p.mean_cost for p in single.pairs] == [p.mean_cost for p in pooled.pairs]


def test_estimator_rejects_small_inputs():
    space = discrete_metric_space(3)
    P = DiscreteDistribution.uniform(space)
    with pytest.raises(ParameterRangeError, match="trials"):
        estimate_ratio(Hasher("poisson"), [P, P], 99, 0)
    with pytest.raises(ParameterRangeError, match="dists"):
        estimate_ratio(Hasher("poisson"), [P], 100, 0)
    with pytest.raises(ParameterRangeError, match="truncate"):
        estimate_truncated_ratio(Hasher("poisson"), [P, P], -1.0, 100, 0)


def test_within_uses_the_standard_error():
    space = discrete_metric_space(4)
    collection, _ = cycle_instance(space, [0, 1, 2, 3])
    estimate = estimate_ratio(Hasher("poisson"), collection, 2000, 8)
    assert estimate.within(estimate.ratio)
    assert not estimate.within(estimate.ratio - 10 * estimate.ratio_stderr - 1e-6, sigmas=3.0)
