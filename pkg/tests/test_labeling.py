import numpy as np
import pytest

from src.apps import LabelingInstance, fractional_cost, labeling_cost, load_labeling_json, mean_rounded_cost, round_labels
from src.core.distributions import DiscreteDistribution
from src.core.spaces import line_space
from src.exceptions import ParameterRangeError
from src.hashing import Hasher


@pytest.fixture
def line_instance(rng, random_distribution):
    def make(weight: float):
        space = line_space([0.0, 1.0, 2.0, 4.0])
        fractional = tuple(random_distribution(space, min_support=2) for _ in range(4))
        edges = ((0, 1, weight), (1, 2, weight), (2, 3, weight), (0, 3, weight))
        return LabelingInstance(space=space, g=rng.random((4, 4)), edges=edges, fractional=fractional)

    return make


def test_labeling_cost_adds_assignment_and_separation():
    space = line_space([0.0, 1.0, 3.0])
    P = DiscreteDistribution.uniform(space)
    instance = LabelingInstance(
        space=space, g=np.arange(6, dtype=float).reshape(2, 3), edges=((0, 1, 2.0),), fractional=(P, P)
    )
    assert labeling_cost(instance, [0, 2]) == pytest.approx(0.0 + 5.0 + 2.0 * 3.0)
    assert fractional_cost(instance) == pytest.approx(1.0 + 4.0)


def test_rounding_without_edges_is_unbiased(line_instance):
    instance = line_instance(0.0)
    mean, stderr = mean_rounded_cost(instance, Hasher("metric"), 20_000, 4)
    assert abs(mean - fractional_cost(instance)) <= 4.0 * stderr + 1e-9


def test_quantile_rounding_pays_the_fractional_cost_on_the_line(line_instance):
    instance = line_instance(1.5)
    mean, stderr = mean_rounded_cost(instance, Hasher("quantile"), 20_000, 6)
    assert abs(mean - fractional_cost(instance)) <= 4.5 * stderr + 1e-3


def test_rounding_never_undercuts_the_relaxation_on_average(line_instance):
    instance = line_instance(2.0)
    mean, stderr = mean_rounded_cost(instance, Hasher("poisson"), 5000, 1, threads=2)
    assert mean + 4.5 * stderr >= fractional_cost(instance)


def test_round_labels_is_deterministic(line_instance):
    instance = line_instance(1.0)
    first = round_labels(instance, Hasher("metric"), 12)
    second = round_labels(instance, Hasher("metric"), 12)
    assert np.array_equal(first.labels, second.labels)
    assert first.cost == pytest.approx(labeling_cost(instance, first.labels))
    assert first.fractional_cost == pytest.approx(fractional_cost(instance))


@pytest.mark.parametrize(
    "g, edges, field",
    [
        (np.zeros((2, 2)), (), "g"),
        (np.full((2, 3), np.inf), (), "g"),
        (np.zeros((2, 3)), ((0, 2, 1.0),), "edges"),
        (np.zeros((2, 3)), ((0, 1, -1.0),), "edges"),
    ],
)
def test_instance_validation(g, edges, field):
    space = line_space([0.0, 1.0, 3.0])
    P = DiscreteDistribution.uniform(space)
    with pytest.raises(ParameterRangeError) as info:
        LabelingInstance(space=space, g=g, edges=edges, fractional=(P, P))
    assert info.value.field == field


def test_load_labeling_instance(write_json):
    write_json("labels/space.json", {"kind": "explicit-metric", "coords": [0.0, 1.0, 3.0]})
    path = write_json(
        "labels/instance.json",
        {
            "space": "space.json",
            "g": [[0, 1, 2], [2, 1, 0]],
            "edges": [[0, 1, 0.5]],
            "fractional": [[1, 0, 0], [0, 0, 1]],
        },
    )
    instance = load_labeling_json(path)
    assert instance.objects == 2
    assert instance.edges == ((0, 1, 0.5),)
    assert fractional_cost(instance) == pytest.approx(0.5 * 3.0)
    with pytest.raises(ParameterRangeError, match="edges"):
        load_labeling_json(write_json("labels/bad.json", {"g": [], "fractional": []}))
