import math

import numpy as np
import pytest

from src.core.distributions import DiscreteDistribution
from src.core.seeding import as_seed, trial_keys
from src.core.spaces import circle_space, discrete_metric_space, equispaced_circle, line_space
from src.couplings import (
    circle_sample,
    circle_sample_batch,
    circle_winners,
    permutations_from_keys,
    permuted_quantile_sample,
    permuted_quantile_sample_batch,
    quantile_sample,
    quantile_sample_batch,
)
from src.exceptions import SpaceValidationError, UnorderedSpaceError
from src.oracle.emd import emd_exact, quantile_cost_1d


def _mean_within(costs: np.ndarray, expected: float, sigmas: float = 4.5):
    stderr = costs.std(ddof=1) / math.sqrt(costs.size)
    assert abs(costs.mean() - expected) <= sigmas * stderr + 1e-3


# Quantile coupling


def test_quantile_marginal_is_the_distribution(random_distribution, check_marginal):
    space = line_space([4.0, 0.0, 2.5, 1.0, 7.0])
    P = random_distribution(space, min_support=3)
    check_marginal(quantile_sample_batch(P, trial_keys(2, 30_000)), P.mass)


@pytest.mark.parametrize("q", [1.0, 2.0])
def test_quantile_coupling_attains_the_one_dimensional_optimum(random_distribution, q):
    space = line_space([0.0, 1.0, 3.0, 4.5, 7.0], q=q)
    P, Q = random_distribution(space, min_support=2), random_distribution(space, min_support=2)
    keys = trial_keys(4, 40_000)
    costs = space.cost_matrix()[quantile_sample_batch(P, keys), quantile_sample_batch(Q, keys)]
    _mean_within(costs, quantile_cost_1d(P, Q))


def test_quantile_sample_matches_batch(random_distribution):
    space = line_space([0.0, 1.0, 2.0])
    P = random_distribution(space)
    assert quantile_sample(P, 9) == int(quantile_sample_batch(P, as_seed(9).keys)[0])


def test_quantile_needs_an_ordered_space(random_metric_space, random_distribution):
    space = random_metric_space(4)
    with pytest.raises(UnorderedSpaceError):
        quantile_sample(random_distribution(space), 0)


# Permuted quantile coupling


def test_permutations_are_uniform_shuffles():
    perm = permutations_from_keys(trial_keys(1, 40_000), 4)
    assert np.all(np.sort(perm, axis=1) == np.arange(4))
    first = np.bincount(perm[:, 0], minlength=4) / perm.shape[0]
    assert np.allclose(first, 0.25, atol=4.5 * math.sqrt(0.25 * 0.75 / perm.shape[0]))


def test_permuted_quantile_marginal_is_the_distribution(random_distribution, check_marginal):
    P = random_distribution(discrete_metric_space(6), min_support=3)
    check_marginal(permuted_quantile_sample_batch(P, trial_keys(3, 30_000)), P.mass)


def test_permuted_quantile_keeps_identical_distributions_together(random_distribution):
    space = discrete_metric_space(5)
    P = random_distribution(space, min_support=2)
    Q = DiscreteDistribution(space, P.mass.copy())
    keys = trial_keys(7, 500)
    assert np.array_equal(permuted_quantile_sample_batch(P, keys), permuted_quantile_sample_batch(Q, keys))
    assert permuted_quantile_sample(P, 11) == permuted_quantile_sample(Q, 11)


def test_permuted_quantile_needs_the_discrete_metric(random_distribution):
    with pytest.raises(SpaceValidationError, match="kind"):
        permuted_quantile_sample_batch(random_distribution(line_space([0.0, 1.0])), trial_keys(0, 3))


# Rotation coupling on the circle


def test_circle_marginal_is_the_distribution(random_distribution, check_marginal):
    space = circle_space([0.05, 0.2, 0.5, 0.55, 0.9])
    P = random_distribution(space, min_support=3)
    check_marginal(circle_sample_batch(P, trial_keys(5, 30_000)), P.mass)


def test_circle_coupling_commutes_with_rotations(rng):
    m = 8
    positions = np.arange(m) / m
    mass = rng.random(m)
    mass /= mass.sum()
    rotation = rng.integers(0, 1024, size=200) / 1024.0
    u = rng.random(200)
    base = circle_winners(positions, mass, rotation, u)
    assert base.shape == (200,)
    for t in range(1, m):
        shifted = np.roll(mass, t)
        moved = circle_winners(positions, shifted, rotation, u)
        expected = np.mod(circle_winners(positions, mass, np.mod(rotation + t / m, 1.0), u) + t, m)
        assert np.array_equal(moved, expected)


def test_circle_coupling_ratio_is_at_most_two_for_q_one(random_distribution):
    space = equispaced_circle(8, q=1.0)
    keys = trial_keys(6, 20_000)
    for _ in range(3):
        P, Q = random_distribution(space, min_support=2), random_distribution(space, min_support=2)
        costs = space.cost_matrix()[circle_sample_batch(P, keys), circle_sample_batch(Q, keys)]
        stderr = costs.std(ddof=1) / math.sqrt(costs.size)
        assert costs.mean() <= 2.0 * emd_exact(P, Q).value + 4.5 * stderr + 1e-9


def test_circle_coupling_needs_a_circle(random_distribution):
    with pytest.raises(SpaceValidationError, match="kind"):
        circle_sample(random_distribution(discrete_metric_space(3)), 0)
