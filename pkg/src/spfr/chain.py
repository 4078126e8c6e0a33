"""
Generic sequential Poisson functional representation over a finite chain of
observation kernels, with exact partial marginals for checking the
disagreement bound on small instances.
"""

from typing import List, Sequence

import numpy as np

from src.core.distributions import DiscreteDistribution, require_same_space
from src.core.seeding import exponential_from_keys
from src.poisson.pfr import race


def _kernel_matrices(kernels: Sequence) -> List[np.ndarray]:
    return [np.asarray(getattr(k, "rows", k), dtype=np.float64) for k in kernels]


def partial_marginals(P: DiscreteDistribution, kernels: Sequence) -> List[np.ndarray]:
    """
    Law of (Z_1, ..., Z_i) for each i, where Z_j ~ K_j(X, .) independently
    given X ~ P. Entry i is a flat vector over the product of the first i+1
    observation alphabets.
    """
    joint = np.asarray(P.mass, dtype=np.float64)[:, None]
    out = []
    for matrix in _kernel_matrices(kernels):
        joint = (joint[:, :, None] * matrix[:, None, :]).reshape(joint.shape[0], -1)
        out.append(joint.sum(axis=0))
    return out


def spfr_disagreement_bound(P: DiscreteDistribution, Q: DiscreteDistribution, kernels: Sequence) -> np.ndarray:
    """
    b_i = 2 sum_{j <= i} (1 + 1{j < i}) d_TV(Pbar_j, Qbar_j) for each level i.
    """
    require_same_space(P, Q)
    tv = np.array(
        [0.5 * np.abs(a - b).sum() for a, b in zip(partial_marginals(P, kernels), partial_marginals(Q, kernels))]
    )
    bounds = np.empty(tv.size)
    for i in range(tv.size):
        weights = np.where(np.arange(i + 1) < i, 2.0, 1.0)
        bounds[i] = 2.0 * np.sum(weights * tv[: i + 1])
    return bounds


def spfr_trajectory_batch(P: DiscreteDistribution, kernels: Sequence, keys: np.ndarray) -> np.ndarray:
    """
    Observation sequences (Z_1, ..., Z_L) for every key, shape (len(keys), L).
    Level j reads race variables V[j, .] so distributions hashed with the same
    keys share them.
    """
    keys = np.asarray(keys, dtype=np.uint64)
    post = np.tile(np.asarray(P.mass, dtype=np.float64), (keys.shape[0], 1))
    path = []
    for level, matrix in enumerate(_kernel_matrices(kernels)):
        p_hat = post @ matrix
        winners, _ = race(p_hat, exponential_from_keys(keys, level, np.arange(matrix.shape[1])))
        post = post * matrix[:, winners].T
        post = post / post.sum(axis=1, keepdims=True)
        path.append(winners)
    return np.stack(path, axis=1)
