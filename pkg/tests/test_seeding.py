import numpy as np
import pytest
from scipy import stats

from src.core.seeding import (
    SeedContext,
    derive_exponential,
    derive_uniform,
    exponential_from_keys,
    fold,
    master_keys,
    trial_keys,
    uniform_from_keys,
)


def test_derive_uniform_is_deterministic_and_in_unit_interval():
    values = [derive_uniform(42, ("theta",)) for _ in range(3)]
    assert values[0] == values[1] == values[2]
    assert 0.0 < values[0] <= 1.0


def test_distinct_paths_and_seeds_give_distinct_values():
    assert derive_uniform(1, ("u",)) != derive_uniform(1, ("rot",))
    assert derive_uniform(1, ("u",)) != derive_uniform(2, ("u",))
    assert derive_uniform(1, ("exp", 0, 3)) != derive_uniform(1, ("exp", 0, 4))


def test_trial_keys_match_child_seed_contexts():
    keys = trial_keys(5, 10)
    for t in (0, 3, 9):
        assert keys[t] == SeedContext(5).child("trial", t).key
    assert np.array_equal(trial_keys(5, np.array([3, 7])), keys[[3, 7]])


def test_trial_keys_accept_seed_context():
    ctx = SeedContext(11, ("sketch",))
    keys = trial_keys(ctx, 4)
    assert keys[2] == ctx.child("trial", 2).key


def test_exponential_matches_uniform_namespace():
    keys = trial_keys(3, 5)
    points = np.arange(4)
    race = exponential_from_keys(keys, 2, points)
    assert race.shape == (5, 4)
    for x in points:
        assert np.allclose(race[:, x], -np.log(uniform_from_keys(keys, "exp", 2, int(x))), rtol=1e-14, atol=0)
    assert derive_exponential(3, 1, 2) == pytest.approx(-np.log(derive_uniform(3, ("exp", 1, 2))), rel=1e-14)


def test_uniform_and_exponential_moments():
    keys = trial_keys(0, 200_000)
    u = uniform_from_keys(keys, "u")
    assert u.min() > 0.0 and u.max() <= 1.0
    assert abs(u.mean() - 0.5) < 0.003
    e = exponential_from_keys(keys[:50_000], 0, np.arange(2))
    assert abs(e.mean() - 1.0) < 0.02


def test_uniform_over_master_seeds_passes_kolmogorov_smirnov():
    u = uniform_from_keys(master_keys(np.arange(100_000)), "theta")
    assert u[17] == derive_uniform(17, ("theta",))
    result = stats.kstest(u, "uniform")
    assert result.statistic < 0.01


def test_fold_broadcasts_array_tokens():
    base = master_keys(9)
    folded = fold(base, np.arange(3))
    assert folded.shape == (3,)
    assert folded[1] == fold(base, 1)[0]


def test_master_keys_handle_negative_and_array_seeds():
    keys = master_keys([0, -1, 5])
    assert keys.dtype == np.uint64
    assert len(set(keys.tolist())) == 3
