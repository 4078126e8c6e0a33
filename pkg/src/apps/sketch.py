"""
EMD sketches: k hashes of a distribution under child seeds
derive(master, ("sketch", i)). Two sketches built with the same master seed,
k and hasher estimate the transport cost between their distributions by the
mean pointwise cost.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from src.core.distributions import DiscreteDistribution
from src.core.seeding import SeedContext, as_seed, trial_keys
from src.core.spaces import GRID, TORUS, CostSpace
from src.exceptions import IncomparableSketchError, ParameterRangeError, SpaceValidationError
from src.hashing import Hasher


@dataclass(frozen=True, eq=False)
class Sketch:
    k: int
    points: np.ndarray
    seed: SeedContext
    hasher: dict
    space_fingerprint: str

    def comparable_with(self, other: "Sketch") -> bool:
        return (
            self.k == other.k
            and self.seed == other.seed
            and self.hasher == other.hasher
            and self.space_fingerprint == other.space_fingerprint
        )


def make_sketch(hasher: Hasher, P: DiscreteDistribution, k: int, master_seed: Union[SeedContext, int]) -> Sketch:
    if k < 1:
        raise ParameterRangeError("k", f"sketch length must be >= 1, got {k}")
    seed = as_seed(master_seed)
    points = hasher.sample_batch(P.space, P, trial_keys(seed, k, tag="sketch"))
    points.setflags(write=False)
    return Sketch(k=k, points=points, seed=seed, hasher=hasher.describe(), space_fingerprint=P.space.fingerprint)


def sketch_estimate(a: Sketch, b: Sketch, space: CostSpace) -> float:
    """
    (1/k) sum_i c(a_i, b_i).

    Raises:
        IncomparableSketchError: Different seeds, lengths, hashers or spaces.
    """
    if not a.comparable_with(b):
        raise IncomparableSketchError(
            f"sketch: built with different seed/k/hasher (k={a.k} vs {b.k}, {a.hasher} vs {b.hasher})"
        )
    if a.space_fingerprint != space.fingerprint:
        raise IncomparableSketchError("space: sketches were built on a different space")
    return float(space.cost_matrix()[a.points, b.points].mean())


def sketch_vector(sketch: Sketch, space: CostSpace) -> np.ndarray:
    """
    Flattened lattice coordinates of the sketch, a vector in R^{nk}. For the
    l1 grid cost the l1 distance of two vectors divided by k is the estimate.
    """
    if space.kind not in (GRID, TORUS):
        raise SpaceValidationError(f"kind: sketch vectors need a lattice space, got {space.kind!r}")
    return space.lattice[sketch.points].reshape(-1).astype(np.float64)
