import numpy as np
import pytest

from src.core.distributions import DiscreteDistribution
from src.core.seeding import as_seed, trial_keys
from src.core.spaces import discrete_metric_space, explicit_metric_space, line_space
from src.exceptions import OracleLimitError, ZeroRowMassError
from src.oracle.emd import (
    conditional_sample,
    conditional_sample_batch,
    emd_exact,
    independent_cost,
    quantile_cost_1d,
    quantile_plan,
    tv_distance,
)


def test_emd_between_deltas_is_the_cost():
    space = explicit_metric_space([[0, 2, 3], [2, 0, 4], [3, 4, 0]], q=0.5)
    result = emd_exact(DiscreteDistribution.delta(space, 0), DiscreteDistribution.delta(space, 2))
    assert result.value == pytest.approx(np.sqrt(3.0))
    assert result.plan.cost == pytest.approx(result.value)


def test_emd_plan_has_the_right_marginals(random_metric_space, random_distribution):
    space = random_metric_space(7)
    P, Q = random_distribution(space), random_distribution(space)
    result = emd_exact(P, Q)
    dense = result.plan.dense(space.size)
    assert np.allclose(dense.sum(axis=1), P.mass, atol=1e-12)
    assert np.allclose(dense.sum(axis=0), Q.mass, atol=1e-12)
    assert result.value == pytest.approx(float(np.sum(dense * space.cost_matrix())))


def test_emd_never_exceeds_the_independent_coupling(random_metric_space, random_distribution):
    for _ in range(20):
        space = random_metric_space(6, q=1.5)
        P, Q = random_distribution(space), random_distribution(space)
        assert emd_exact(P, Q).value <= independent_cost(P, Q) + 1e-12


@pytest.mark.parametrize("q", [1.0, 1.5, 2.0])
def test_quantile_coupling_is_optimal_on_the_line(rng, random_distribution, q):
    for _ in range(30):
        space = line_space(np.sort(rng.random(6)) * 10.0, q=q)
        P, Q = random_distribution(space), random_distribution(space)
        assert quantile_cost_1d(P, Q) == pytest.approx(emd_exact(P, Q).value, abs=1e-7)


def test_quantile_plan_marginals(rng, random_distribution):
    space = line_space(rng.permutation(8).astype(float))
    P, Q = random_distribution(space), random_distribution(space)
    dense = quantile_plan(P, Q).dense(space.size)
    assert np.allclose(dense.sum(axis=1), P.mass)
    assert np.allclose(dense.sum(axis=0), Q.mass)


def test_discrete_metric_emd_is_total_variation(random_distribution):
    space = discrete_metric_space(6)
    for _ in range(30):
        P, Q = random_distribution(space), random_distribution(space)
        assert emd_exact(P, Q).value == pytest.approx(tv_distance(P, Q), abs=1e-9)


def test_quantized_masses_give_the_same_value(random_metric_space, random_distribution):
    space = random_metric_space(5)
    P, Q = random_distribution(space), random_distribution(space)
    assert emd_exact(P, Q, quantize=True).value == pytest.approx(emd_exact(P, Q).value, abs=1e-9)


def test_oracle_limit(monkeypatch):
    monkeypatch.setenv("PAIRWISE_OT_ORACLE_MAX_SUPPORT", "2")
    space = discrete_metric_space(3)
    P = DiscreteDistribution.uniform(space)
    with pytest.raises(OracleLimitError, match="support"):
        emd_exact(P, DiscreteDistribution.uniform(space, [0, 1]))


def test_conditional_sampling_follows_the_plan_row(check_marginal):
    space = line_space([0.0, 1.0, 2.0, 3.0])
    P = DiscreteDistribution(space, [0.5, 0.5, 0.0, 0.0])
    Q = DiscreteDistribution(space, [0.0, 0.25, 0.25, 0.5])
    plan = emd_exact(P, Q).plan
    keys = trial_keys(4, 20_000)
    given = np.ones(keys.size, dtype=np.int64)
    draws = conditional_sample_batch(plan, given, keys)
    row = plan.dense(space.size)[1]
    check_marginal(draws, row / row.sum())
    assert conditional_sample(plan, 1, 7) == conditional_sample_batch(plan, np.array([1]), as_seed(7).keys)[0]


def test_conditioning_on_a_massless_point_fails():
    space = line_space([0.0, 1.0, 2.0])
    plan = emd_exact(DiscreteDistribution.delta(space, 0), DiscreteDistribution.delta(space, 2)).plan
    with pytest.raises(ZeroRowMassError, match="given_x"):
        conditional_sample(plan, 1, 0)
