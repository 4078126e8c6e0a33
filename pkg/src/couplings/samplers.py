"""
Closed-form couplings driven by shared uniforms: the quantile coupling on an
ordered space, the permuted quantile coupling on the discrete metric and the
random-rotation quantile coupling on the circle.
"""

from typing import Union

import numpy as np

from src.core.distributions import DiscreteDistribution
from src.core.seeding import SeedContext, as_seed, uniform_from_keys
from src.core.spaces import CIRCLE, DISCRETE
from src.exceptions import SpaceValidationError
from src.oracle.emd import sorted_cdf


def _invert_rows(cdf: np.ndarray, mass: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    Row-wise inf{i : cdf[t, i] >= u[t]}, clamped to the last positive-mass
    position so rounding in the cumulative sum never runs off the end.
    """
    picks = (cdf < u[:, None]).sum(axis=1)
    last = mass.shape[1] - 1 - np.argmax(mass[:, ::-1] > 0, axis=1)
    return np.minimum(picks, last)


def quantile_sample_batch(P: DiscreteDistribution, keys: np.ndarray) -> np.ndarray:
    """F_P^{-1}(u) per key with u = uniform(key, "u")."""
    order = np.argsort(P.space.order_values(), kind="stable")
    cdf = sorted_cdf(P.mass, order)
    u = uniform_from_keys(keys, "u")
    return order[np.searchsorted(cdf, u, side="left").clip(max=order.size - 1)]


def quantile_sample(P: DiscreteDistribution, seed: Union[SeedContext, int]) -> int:
    """
    Quantile coupling: every distribution on the same ordered space inverts
    its CDF at the same uniform.

    Raises:
        UnorderedSpaceError: If the space has no total order.
    """
    return int(quantile_sample_batch(P, as_seed(seed).keys)[0])


def permutations_from_keys(keys: np.ndarray, size: int) -> np.ndarray:
    """Fisher-Yates shuffle per key; step k swaps k with floor(u (k+1)), u = uniform(key, "perm", k)."""
    keys = np.asarray(keys, dtype=np.uint64)
    perm = np.tile(np.arange(size), (keys.shape[0], 1))
    rows = np.arange(keys.shape[0])
    for k in range(size - 1, 0, -1):
        u = uniform_from_keys(keys, "perm", k)
        j = np.minimum(np.floor(u * (k + 1)).astype(np.int64), k)
        perm[rows, k], perm[rows, j] = perm[rows, j], perm[rows, k].copy()
    return perm


def permuted_quantile_sample_batch(P: DiscreteDistribution, keys: np.ndarray) -> np.ndarray:
    if P.space.kind != DISCRETE:
        raise SpaceValidationError(f"kind: permuted quantile coupling needs a {DISCRETE!r} space, got {P.space.kind!r}")
    keys = np.asarray(keys, dtype=np.uint64)
    size = P.space.size
    perm = permutations_from_keys(keys, size)
    pushed = np.zeros(perm.shape)
    pushed[np.arange(keys.shape[0])[:, None], perm] = P.mass[None, :]
    positions = _invert_rows(np.cumsum(pushed, axis=1), pushed, uniform_from_keys(keys, "u"))
    inverse = np.argsort(perm, axis=1)
    return inverse[np.arange(keys.shape[0]), positions]


def permuted_quantile_sample(P: DiscreteDistribution, seed: Union[SeedContext, int]) -> int:
    """
    sigma^{-1}(F^{-1}_{sigma_* P}(u)) for a uniform random permutation sigma of
    the discrete-metric points. Permutation and quantile level come from
    disjoint namespaces.
    """
    return int(permuted_quantile_sample_batch(P, as_seed(seed).keys)[0])


def circle_winners(positions: np.ndarray, mass: np.ndarray, rotation: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    Index of the point chosen by the rotated quantile for every (rotation, u).
    Points are rotated by ``rotation`` mod 1 and the CDF starts at 0.
    """
    positions = np.asarray(positions, dtype=np.float64)
    rotation = np.atleast_1d(np.asarray(rotation, dtype=np.float64))
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    rotated = np.mod(positions[None, :] + rotation[:, None], 1.0)
    order = np.argsort(rotated, axis=1, kind="stable")
    sorted_mass = np.asarray(mass, dtype=np.float64)[order]
    picks = _invert_rows(np.cumsum(sorted_mass, axis=1), sorted_mass, u)
    return order[np.arange(order.shape[0]), picks]


def circle_sample_batch(P: DiscreteDistribution, keys: np.ndarray) -> np.ndarray:
    if P.space.kind != CIRCLE:
        raise SpaceValidationError(f"kind: rotation coupling needs a {CIRCLE!r} space, got {P.space.kind!r}")
    rotation = uniform_from_keys(keys, "rot")
    return circle_winners(P.space.positions, P.mass, rotation, uniform_from_keys(keys, "u"))


def circle_sample(P: DiscreteDistribution, seed: Union[SeedContext, int]) -> int:
    """Rotate by Z, invert the circular CDF at U, rotate back. Returns a point index."""
    return int(circle_sample_batch(P, as_seed(seed).keys)[0])
