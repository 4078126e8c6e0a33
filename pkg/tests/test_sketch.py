import numpy as np
import pytest

from src.apps import make_sketch, sketch_estimate, sketch_vector
from src.core.spaces import lp_grid_space
from src.exceptions import IncomparableSketchError, ParameterRangeError, SpaceValidationError
from src.hashing import Hasher
from src.oracle.emd import emd_exact


@pytest.fixture
def grid_pair(random_distribution):
    space = lp_grid_space(2, 3, p=1, q=1.0)
    return space, random_distribution(space, min_support=3), random_distribution(space, min_support=3)


def test_sketches_are_deterministic(grid_pair):
    space, P, _ = grid_pair
    a = make_sketch(Hasher("metric"), P, 32, 4)
    b = make_sketch(Hasher("metric"), P, 32, 4)
    assert np.array_equal(a.points, b.points)
    assert a.comparable_with(b)
    assert sketch_estimate(a, b, space) == 0.0


def test_sketch_estimate_is_the_mean_pointwise_cost(grid_pair):
    space, P, Q = grid_pair
    a = make_sketch(Hasher("torus"), P, 64, 1)
    b = make_sketch(Hasher("torus"), Q, 64, 1)
    expected = space.cost_matrix()[a.points, b.points].mean()
    assert sketch_estimate(a, b, space) == pytest.approx(expected)


def test_sketch_vectors_recover_the_estimate_under_l1(grid_pair):
    space, P, Q = grid_pair
    a = make_sketch(Hasher("metric"), P, 50, 2)
    b = make_sketch(Hasher("metric"), Q, 50, 2)
    va, vb = sketch_vector(a, space), sketch_vector(b, space)
    assert va.shape == (100,)
    assert np.abs(va - vb).sum() / 50 == pytest.approx(sketch_estimate(a, b, space))


def test_long_sketches_do_not_undercut_the_optimal_cost(grid_pair):
    space, P, Q = grid_pair
    k = 4096
    a = make_sketch(Hasher("metric"), P, k, 3)
    b = make_sketch(Hasher("metric"), Q, k, 3)
    costs = space.cost_matrix()[a.points, b.points]
    stderr = costs.std(ddof=1) / np.sqrt(k)
    assert sketch_estimate(a, b, space) >= emd_exact(P, Q).value - 4.5 * stderr


@pytest.mark.parametrize(
    "other",
    [
        lambda P: make_sketch(Hasher("metric"), P, 16, 9),
        lambda P: make_sketch(Hasher("metric"), P, 8, 8),
        lambda P: make_sketch(Hasher("poisson"), P, 16, 8),
        lambda P: make_sketch(Hasher("metric", reduced=True), P, 16, 8),
    ],
)
def test_incomparable_sketches_are_rejected(grid_pair, other):
    space, P, Q = grid_pair
    a = make_sketch(Hasher("metric"), P, 16, 8)
    with pytest.raises(IncomparableSketchError):
        sketch_estimate(a, other(Q), space)


def test_sketch_space_must_match(grid_pair):
    space, P, Q = grid_pair
    a = make_sketch(Hasher("metric"), P, 4, 0)
    b = make_sketch(Hasher("metric"), Q, 4, 0)
    with pytest.raises(IncomparableSketchError, match="space"):
        sketch_estimate(a, b, lp_grid_space(2, 3, p=2, q=1.0))


def test_sketch_rejects_bad_lengths_and_vector_spaces(grid_pair, random_metric_space, random_distribution):
    _, P, _ = grid_pair
    with pytest.raises(ParameterRangeError, match="k"):
        make_sketch(Hasher("metric"), P, 0, 0)
    space = random_metric_space(4)
    sketch = make_sketch(Hasher("metric"), random_distribution(space), 4, 0)
    with pytest.raises(SpaceValidationError, match="lattice"):
        sketch_vector(sketch, space)
