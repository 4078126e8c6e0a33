import math

import numpy as np
import pytest

from src.core.spaces import explicit_metric_space, line_space, lp_grid_space
from src.exceptions import SpaceValidationError
from src.ratio import line_isometry_test, ratio_transfer_bound


def test_transfer_between_distance_and_its_square():
    space = line_space([0.0, 1.0, 3.0])
    d = space.distance_matrix()
    assert ratio_transfer_bound(space, d, d ** 2) == pytest.approx(3.0)
    assert ratio_transfer_bound(space, lambda i, j: d[i, j], lambda i, j: d[i, j] ** 2) == pytest.approx(3.0)


def test_transfer_of_a_scaled_cost_is_one():
    space = line_space([0.0, 1.0, 3.0])
    d = space.distance_matrix()
    assert ratio_transfer_bound(space, d, 5.0 * d) == pytest.approx(1.0)


def test_transfer_is_infinite_when_one_cost_vanishes_off_the_diagonal():
    space = line_space([0.0, 1.0, 3.0])
    c2 = space.distance_matrix().copy()
    c2[0, 1] = c2[1, 0] = 0.0
    assert math.isinf(ratio_transfer_bound(space, space.distance_matrix(), c2))


def test_transfer_checks_matrix_shape():
    with pytest.raises(SpaceValidationError, match="cost"):
        ratio_transfer_bound(line_space([0.0, 1.0]), np.zeros((3, 3)), np.zeros((2, 2)))


def test_line_isometry_recovers_coordinates():
    space = explicit_metric_space(np.abs(np.subtract.outer([2.0, 0.0, 5.0, 3.5], [2.0, 0.0, 5.0, 3.5])))
    g = line_isometry_test(space)
    assert g is not None
    assert np.allclose(np.abs(g[:, None] - g[None, :]), space.cost_matrix())


def test_line_isometry_rejects_the_triangle():
    triangle = explicit_metric_space([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert line_isometry_test(triangle) is None


def test_line_isometry_needs_an_explicit_space():
    with pytest.raises(SpaceValidationError, match="kind"):
        line_isometry_test(lp_grid_space(1, 3))
