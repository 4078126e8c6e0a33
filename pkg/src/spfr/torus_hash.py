"""
Locality sensitive hash for distributions on the grid [0..s]^n, run on the
discrete torus [0..2s]^n into which the grid embeds isometrically. The
observation law at each level is the posterior convolved with a rounded
l_p ball kernel.
"""

import math
from typing import List, Optional, Union

import numpy as np

from src.core.distributions import DiscreteDistribution
from src.core.seeding import SeedContext, as_seed, exponential_from_keys
from src.core.spaces import GRID, TORUS, CostSpace, grid_to_torus, torus_for_grid
from src.exceptions import DistributionError, ParameterRangeError, SpaceValidationError
from src.logger_config import setup_logger
from src.poisson.pfr import race
from src.spfr.kernels import circular_convolve, torus_kernel_rows
from src.spfr.schedule import thetas_from_keys

logger = setup_logger(__name__)

CHUNK_CELLS = 1 << 21
MAX_EXTRA_LEVELS = 4096


def torus_eta(s: int) -> float:
    """Default rate 5 / (3 (1 - 1/ln s)); positive only for s >= 3."""
    if s < 3:
        raise ParameterRangeError("s", f"default torus rate needs s >= 3 (ln s > 1), got {s}; pass eta explicitly")
    return 5.0 / (3.0 * (1.0 - 1.0 / math.log(s)))


def torus_levels(n: int, s: int, p: float, eta: float) -> tuple:
    scale = 1.0 if math.isinf(p) else n ** (1.0 / p)
    return math.floor(-math.log(scale * s) / eta) - 1, 1


def embed_on_torus(space: CostSpace, P: DiscreteDistribution):
    """
    Returns (torus, mass on the torus, map from torus index back to the
    caller's point index). Mass outside the embedded grid is rejected.
    """
    if space.kind == GRID:
        torus = torus_for_grid(space)
        embedding = grid_to_torus(space, torus)
        mass = np.zeros(torus.size)
        mass[embedding] = P.mass
        back = np.full(torus.size, -1, dtype=np.int64)
        back[embedding] = np.arange(space.size)
        return torus, mass, back
    if space.kind == TORUS:
        outside = np.any(space.lattice > space.s, axis=1)
        if np.any(P.mass[outside] > 0):
            bad = int(np.flatnonzero(outside & (P.mass > 0))[0])
            raise DistributionError(
                f"mass: point {space.labels()[bad]} lies outside the embedded grid [0..{space.s}]^{space.n}"
            )
        return space, np.asarray(P.mass, dtype=np.float64), np.arange(space.size)
    raise SpaceValidationError(f"kind: torus hash needs {GRID!r} or {TORUS!r}, got {space.kind!r}")


def _hash_chunk(torus, mass, keys, eta, resolution, method, trace) -> np.ndarray:
    cells = torus.size
    trials = keys.shape[0]
    support = mass > 0
    if np.count_nonzero(support) == 1:
        return np.full(trials, int(np.flatnonzero(support)[0]))

    lattice = torus.lattice
    period = torus.period
    points = np.arange(cells)
    thetas = thetas_from_keys(keys)
    i0, i1 = torus_levels(torus.n, torus.s, torus.p, eta)

    post = np.tile(mass, (trials, 1))
    alive = np.ones(trials, dtype=bool)
    level = i0
    while np.any(alive):
        if level > i1 + MAX_EXTRA_LEVELS:
            raise RuntimeError(f"Torus hash did not collapse by level {level}")
        idx = np.flatnonzero(alive)
        w = np.exp(-eta * (level + thetas[idx]))
        rows = torus_kernel_rows(torus, w, resolution)
        p_hat = circular_convolve(post[idx], rows, torus.shape, method)
        race_variables = exponential_from_keys(keys[idx], level, points)
        if trace is not None:
            trace.append((level, race_variables.copy()))
        winners, _ = race(p_hat, race_variables)
        offsets = np.mod(lattice[winners][:, None, :] - lattice[None, :, :], period)
        likelihood = np.take_along_axis(rows, np.ravel_multi_index(tuple(np.moveaxis(offsets, -1, 0)), torus.shape), axis=1)
        updated = post[idx] * likelihood
        post[idx] = updated / updated.max(axis=1, keepdims=True)
        alive[idx] = np.count_nonzero(post[idx] > 0, axis=1) > 1
        level += 1
    return np.argmax(post > 0, axis=1)


def hash_torus_batch(
    space: CostSpace,
    P: DiscreteDistribution,
    keys: np.ndarray,
    resolution: Optional[int] = None,
    eta: Optional[float] = None,
    method: str = "auto",
    trace: Optional[List] = None,
) -> np.ndarray:
    torus, mass, back = embed_on_torus(space, P)
    if eta is None:
        eta = torus_eta(torus.s)
    elif not eta > 0:
        raise ParameterRangeError("eta", f"geometric rate must be positive, got {eta}")
    keys = np.asarray(keys, dtype=np.uint64)
    chunk = max(1, CHUNK_CELLS // torus.size)
    parts = [
        _hash_chunk(torus, mass, keys[start:start + chunk], float(eta), resolution, method, trace)
        for start in range(0, keys.shape[0], chunk)
    ]
    winners = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return back[winners]


def lsh_torus(
    grid: CostSpace,
    P: DiscreteDistribution,
    seed: Union[SeedContext, int],
    resolution: Optional[int] = None,
    eta: Optional[float] = None,
    method: str = "auto",
    trace: Optional[List] = None,
) -> int:
    """
    Hashes a distribution on [0..s]^n (given on the lp-grid or directly on
    its lp-torus) to a point of that space.

    Args:
        grid: lp-grid space, or the lp-torus with mass inside the embedded grid.
        P: Distribution on ``grid``.
        seed: Seed context.
        resolution: Quadrature samples per axis per cell for the ball kernel.
        eta: Override for the geometric rate (default 5/(3(1 - 1/ln s))).
        method: Convolution method: "fft", "direct" or "auto".
        trace: If given, receives (level, race variables) per level read.

    Raises:
        DistributionError: If mass escapes the embedded grid.
    """
    return int(hash_torus_batch(grid, P, as_seed(seed).keys, resolution, eta, method, trace)[0])
