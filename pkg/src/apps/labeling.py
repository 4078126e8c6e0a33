"""
Randomized rounding for metric labeling: every object's fractional label
distribution is hashed with one shared seed, so neighbouring objects with
similar label distributions tend to receive nearby labels.
"""

import math
import os
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.distributions import DiscreteDistribution, require_same_space
from src.core.io import load_space_json, read_json
from src.core.seeding import SeedContext, as_seed, trial_keys
from src.core.spaces import CostSpace
from src.exceptions import DistributionError, ParameterRangeError
from src.hashing import Hasher
from src.oracle.emd import emd_exact
from src.ratio.estimator import hash_collection


@dataclass(frozen=True, eq=False)
class LabelingInstance:
    """
    Objects 0..A-1 labelled with points of ``space``.

    Attributes:
        space: Label space with cost c.
        g: Assignment costs, shape (A, |X|).
        edges: (a, b, w) with w >= 0.
        fractional: One label distribution per object.
    """

    space: CostSpace
    g: np.ndarray
    edges: Tuple[Tuple[int, int, float], ...]
    fractional: Tuple[DiscreteDistribution, ...]

    def __post_init__(self):
        g = np.asarray(self.g, dtype=np.float64)
        objects = len(self.fractional)
        if g.shape != (objects, self.space.size):
            raise ParameterRangeError("g", f"expected shape ({objects}, {self.space.size}), got {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ParameterRangeError("g", "assignment costs must be finite")
        for idx, (a, b, w) in enumerate(self.edges):
            if not (0 <= a < objects and 0 <= b < objects):
                raise ParameterRangeError("edges", f"edge {idx} joins unknown objects ({a}, {b})")
            if not w >= 0:
                raise ParameterRangeError("edges", f"edge {idx} has negative weight {w}")
        if objects:
            require_same_space(*self.fractional, space=self.space)
        object.__setattr__(self, "g", g)

    @property
    def objects(self) -> int:
        return len(self.fractional)

    def edge_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty, np.zeros(0)
        a, b, w = zip(*self.edges)
        return np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), np.asarray(w, dtype=np.float64)


@dataclass(frozen=True)
class RoundedLabeling:
    labels: np.ndarray
    cost: float
    fractional_cost: float


def labeling_cost(instance: LabelingInstance, labels: Sequence[int]) -> float:
    """Q(f) = sum_a g(a, f(a)) + sum_{(a,b)} w c(f(a), f(b))."""
    return float(_labeling_costs(instance, np.asarray(labels, dtype=np.int64)[:, None])[0])


def _labeling_costs(instance: LabelingInstance, labels: np.ndarray) -> np.ndarray:
    """Q(f) for every column of ``labels`` (shape (A, trials))."""
    assign = instance.g[np.arange(instance.objects)[:, None], labels].sum(axis=0)
    a, b, w = instance.edge_arrays()
    if a.size == 0:
        return assign
    cost = instance.space.cost_matrix()
    return assign + (w[:, None] * cost[labels[a], labels[b]]).sum(axis=0)


def fractional_cost(instance: LabelingInstance) -> float:
    """Q~ = sum_a E_{P_a}[g(a, .)] + sum_{(a,b)} w C*(P_a, P_b)."""
    assign = sum(P.expectation(instance.g[i]) for i, P in enumerate(instance.fractional))
    transport = sum(w * emd_exact(instance.fractional[a], instance.fractional[b]).value for a, b, w in instance.edges)
    return float(assign + transport)


def round_labels(
    instance: LabelingInstance, hasher: Hasher, master_seed: Union[SeedContext, int]
) -> RoundedLabeling:
    """f(a) = hash(P_a) under one shared seed."""
    keys = as_seed(master_seed).keys
    labels = hash_collection(hasher, instance.fractional, keys)[:, 0]
    return RoundedLabeling(
        labels=labels,
        cost=labeling_cost(instance, labels),
        fractional_cost=fractional_cost(instance),
    )


def mean_rounded_cost(
    instance: LabelingInstance,
    hasher: Hasher,
    trials: int,
    master_seed: Union[SeedContext, int],
    threads: int = 1,
) -> Tuple[float, float]:
    """Mean and standard error of Q(f) over child seeds derive(master, ("trial", t))."""
    if trials < 1:
        raise ParameterRangeError("trials", f"must be >= 1, got {trials}")
    labels = hash_collection(hasher, instance.fractional, trial_keys(master_seed, trials), threads)
    costs = _labeling_costs(instance, labels)
    stderr = float(costs.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return float(costs.mean()), stderr


def load_labeling_json(path: str, space: Optional[CostSpace] = None) -> LabelingInstance:
    """
    Reads {"space": path, "g": [[..]], "edges": [[a, b, w], ..], "fractional": [[..], ..]}.
    The space path is resolved relative to the instance file.
    """
    raw = read_json(path)
    for key in ("g", "edges", "fractional"):
        if key not in raw:
            raise ParameterRangeError(key, f"missing from labeling instance {path}")
    if space is None:
        if "space" not in raw:
            raise DistributionError(f"space: missing from labeling instance {path}")
        space_path = raw["space"]
        if not os.path.isabs(space_path):
            space_path = os.path.join(os.path.dirname(os.path.abspath(path)), space_path)
        space = load_space_json(space_path)
    fractional: List[DiscreteDistribution] = [DiscreteDistribution(space, row) for row in raw["fractional"]]
    edges = tuple((int(a), int(b), float(w)) for a, b, w in raw["edges"])
    return LabelingInstance(space=space, g=np.asarray(raw["g"], dtype=np.float64), edges=edges, fractional=tuple(fractional))
