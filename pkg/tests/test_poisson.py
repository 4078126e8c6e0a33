import numpy as np
import pytest

from src.core.distributions import DiscreteDistribution
from src.core.seeding import trial_keys
from src.core.spaces import discrete_metric_space
from src.exceptions import DistributionError
from src.oracle.emd import tv_distance
from src.poisson.pfr import (
    dpc_closed_form,
    empirical_disagreement,
    pfr_select,
    pfr_select_batch,
    race,
    universal_coupling_batch,
    universal_coupling_sample,
)


def test_race_breaks_ties_toward_the_lowest_index():
    winners, scores = race(np.array([1.0, 1.0, 1.0]), np.array([[2.0, 1.0, 1.0]]))
    assert winners[0] == 1
    assert scores[0] == 1.0


def test_race_skips_zero_weights():
    winners, _ = race(np.array([0.0, 0.5, 0.5]), np.array([[1e-9, 3.0, 2.0]]))
    assert winners[0] == 2


def test_pfr_marginal_is_the_distribution(random_distribution, check_marginal):
    P = random_distribution(discrete_metric_space(6), min_support=3)
    winners, _ = pfr_select_batch(P, trial_keys(1, 30_000))
    check_marginal(winners, P.mass)


def test_pfr_select_matches_batch():
    P = DiscreteDistribution.uniform(discrete_metric_space(5))
    outcome = pfr_select(P, 12)
    assert 0 <= outcome.winner < 5
    assert outcome.winning_score > 0
    assert outcome == pfr_select(P, 12)


def test_dpc_closed_form_extremes():
    space = discrete_metric_space(4)
    P = DiscreteDistribution.uniform(space, [0, 1])
    assert dpc_closed_form(P, P) == pytest.approx(0.0, abs=1e-12)
    assert dpc_closed_form(P, DiscreteDistribution.uniform(space, [2, 3])) == 1.0


def test_dpc_closed_form_two_point_example():
    space = discrete_metric_space(2)
    P = DiscreteDistribution(space, [0.5, 0.5])
    Q = DiscreteDistribution(space, [0.75, 0.25])
    # agreement at 0: 1/(1 + max(1, 1/3)) = 1/2; at 1: 1/(max(1, 3) + 1) = 1/4
    assert dpc_closed_form(P, Q) == pytest.approx(0.25)


def test_dpc_respects_the_poisson_matching_bound(random_distribution):
    space = discrete_metric_space(6)
    for _ in range(50):
        P, Q = random_distribution(space), random_distribution(space)
        tv = tv_distance(P, Q)
        assert dpc_closed_form(P, Q) <= 2 * tv / (1 + tv) + 1e-12


def test_empirical_disagreement_matches_closed_form(random_distribution):
    space = discrete_metric_space(5)
    P, Q = random_distribution(space, min_support=2), random_distribution(space, min_support=2)
    rate, stderr = empirical_disagreement(P, Q, 40_000, 3)
    assert abs(rate - dpc_closed_form(P, Q)) <= 4.5 * stderr + 1e-3


def test_empirical_disagreement_does_not_depend_on_threads(random_distribution):
    space = discrete_metric_space(5)
    P, Q = random_distribution(space), random_distribution(space)
    assert empirical_disagreement(P, Q, 5000, 9, threads=1) == empirical_disagreement(P, Q, 5000, 9, threads=4)


def test_universal_coupling_shares_race_variables(random_distribution):
    space = discrete_metric_space(6)
    collection = [random_distribution(space) for _ in range(3)]
    keys = trial_keys(2, 100)
    joint = universal_coupling_batch(collection, keys)
    assert joint.shape == (3, 100)
    for row, P in zip(joint, collection):
        assert np.array_equal(row, pfr_select_batch(P, keys)[0])
    assert universal_coupling_sample(collection, 5) == [pfr_select(P, 5).winner for P in collection]
    with pytest.raises(DistributionError):
        universal_coupling_batch([], keys)
