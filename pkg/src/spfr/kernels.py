"""
Ball kernels. On an explicit metric the kernel sends x to the uniform law on
its radius-w ball. On the discrete torus the kernel is the rounded image of
the uniform law on the continuous l_p ball; its cell weights are estimated by
midpoint sub-grid quadrature, which only has to be consistent between calls
(any fixed kernel keeps the coupling valid; quadrature error only moves the
constants).
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy import fft as sp_fft

from src.config import get_settings
from src.core.spaces import TORUS, CostSpace
from src.exceptions import ParameterRangeError, SpaceValidationError
from src.logger_config import setup_logger

logger = setup_logger(__name__)

FFT_THRESHOLD = 4096
DIRECT_CHUNK_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class BallKernel:
    """
    Row-stochastic kernel. ``rows`` is (N, N) for explicit metrics, or a
    single translation-invariant row over the torus cells when ``shape`` is set.
    """

    w: float
    rows: np.ndarray
    shape: Optional[Tuple[int, ...]] = None

    @property
    def translation_invariant(self) -> bool:
        return self.shape is not None


def metric_ball_kernel(metric: np.ndarray, w: float) -> BallKernel:
    inside = (metric <= w).astype(np.float64)
    return BallKernel(w=float(w), rows=inside / inside.sum(axis=1, keepdims=True))


def default_resolution(n: int) -> int:
    return 8 if n <= 4 else 4


def _lp_norm(values: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p):
        return np.abs(values).max(axis=-1)
    return np.power(np.power(np.abs(values), p).sum(axis=-1), 1.0 / p)


class TorusKernelTable:
    """
    Quadrature samples for one (n, p, period, resolution, reach). Samples sit
    at sub-cell midpoints of every cell within ``reach`` of the origin; each is
    tagged with its wrapped torus cell and sorted by l_p norm within that cell.
    ``rows(w)`` counts samples with norm <= w per cell.
    """

    def __init__(self, n: int, p: float, period: int, resolution: int, reach: int):
        self.n, self.p, self.period = n, p, period
        self.resolution, self.reach = resolution, reach
        cells = np.arange(-reach, reach + 1)
        offsets = (np.arange(resolution) + 0.5) / resolution - 0.5
        axis_values = (cells[:, None] + offsets[None, :]).ravel()
        axis_cells = np.repeat(np.mod(cells, period), resolution)
        mesh = np.stack(np.meshgrid(*([axis_values] * n), indexing="ij"), axis=-1).reshape(-1, n)
        cell_mesh = np.stack(np.meshgrid(*([axis_cells] * n), indexing="ij"), axis=-1).reshape(-1, n)
        norms = _lp_norm(mesh, p)
        flat_cells = np.ravel_multi_index(tuple(cell_mesh.T), (period,) * n)
        order = np.lexsort((norms, flat_cells))
        self._norms = norms[order]
        self._cells = flat_cells[order]
        self._present = np.unique(self._cells)
        self._starts = np.searchsorted(self._cells, self._present, side="left")
        self._stops = np.searchsorted(self._cells, self._present, side="right")

    @property
    def sample_count(self) -> int:
        return int(self._norms.size)

    def rows(self, w: np.ndarray) -> np.ndarray:
        w = np.atleast_1d(np.asarray(w, dtype=np.float64))
        counts = np.zeros((w.size, self.period ** self.n))
        for cell, start, stop in zip(self._present, self._starts, self._stops):
            counts[:, cell] = np.searchsorted(self._norms[start:stop], w, side="right")
        totals = counts.sum(axis=1, keepdims=True)
        empty = totals[:, 0] == 0
        if np.any(empty):
            counts[empty, 0], totals[empty] = 1.0, 1.0
        return counts / totals


@lru_cache(maxsize=8)
def _table(n: int, p: float, period: int, resolution: int, reach: int) -> TorusKernelTable:
    table = TorusKernelTable(n, p, period, resolution, reach)
    logger.debug(
        f"Built torus kernel table n={n} p={p} period={period} r={resolution} reach={reach} "
        f"({table.sample_count} samples)"
    )
    return table


def _reach(w: np.ndarray) -> np.ndarray:
    return np.ceil(np.asarray(w) + 0.5).astype(np.int64)


def _resolution_for(reach: np.ndarray, n: int, base: int, budget: int) -> np.ndarray:
    """Largest r <= base with (2R+1)^n r^n <= budget; 0 means fall back to a uniform row."""
    per_axis = math.floor(budget ** (1.0 / n) + 1e-9)
    r = np.floor(per_axis / (2 * reach + 1)).astype(np.int64)
    return np.clip(r, 0, base)


def torus_kernel_rows(torus: CostSpace, w: np.ndarray, resolution: Optional[int] = None) -> np.ndarray:
    """
    Kernel rows round_* U B_w(0, .) over the torus cells for each radius in ``w``,
    shape (len(w), period^n). Radii below 1/2 give the exact delta row.
    """
    if torus.kind != TORUS:
        raise SpaceValidationError(f"kind: torus kernel needs an {TORUS!r} space, got {torus.kind!r}")
    w = np.atleast_1d(np.asarray(w, dtype=np.float64))
    if np.any(~(w > 0)):
        raise ParameterRangeError("w", "ball radius must be positive")
    base = default_resolution(torus.n) if resolution is None else int(resolution)
    if base < 1:
        raise ParameterRangeError("resolution", f"must be >= 1, got {resolution}")
    cells = torus.period ** torus.n
    out = np.zeros((w.size, cells))
    delta = w < 0.5
    out[delta, 0] = 1.0
    reach = _reach(w)
    res = _resolution_for(reach, torus.n, base, get_settings().kernel_sample_budget)
    coarse = ~delta & (res == 0)
    out[coarse] = 1.0 / cells
    per_axis = math.floor(get_settings().kernel_sample_budget ** (1.0 / torus.n) + 1e-9)
    for r in np.unique(res[~delta & ~coarse]):
        members = np.flatnonzero(~delta & (res == r))
        # Round the reach up so tables are shared across chunks; counts do not depend on it
        needed = int(reach[members].max())
        table_reach = min(1 << (needed - 1).bit_length(), (per_axis // int(r) - 1) // 2)
        table = _table(torus.n, torus.p, torus.period, int(r), max(needed, table_reach))
        out[members] = table.rows(w[members])
    return out


def torus_kernel(grid: CostSpace, w: float, resolution: Optional[int] = None) -> BallKernel:
    row = torus_kernel_rows(grid, np.array([w]), resolution)[0]
    return BallKernel(w=float(w), rows=row, shape=grid.shape)


@lru_cache(maxsize=8)
def _difference_index(shape: Tuple[int, ...]) -> np.ndarray:
    """D[y, x] = flat index of (y - x) mod period."""
    lattice = np.indices(shape).reshape(len(shape), -1).T
    diff = np.mod(lattice[:, None, :] - lattice[None, :, :], np.array(shape))
    return np.ravel_multi_index(tuple(np.moveaxis(diff, -1, 0)), shape)


def circular_convolve(field: np.ndarray, rows: np.ndarray, shape: Tuple[int, ...], method: str = "auto") -> np.ndarray:
    """
    out[t, y] = sum_x field[t, x] rows[t, (y - x) mod period] on the torus.

    Args:
        field: (T, cells) non-negative weights.
        rows: (T, cells) kernel rows, or a single (cells,) row.
        shape: Torus shape (period,) * n.
        method: "fft", "direct" or "auto" (FFT above 4096 cells).
    """
    cells = int(np.prod(shape))
    rows = np.broadcast_to(rows, field.shape)
    if method == "auto":
        method = "fft" if cells > FFT_THRESHOLD else "direct"
    if method == "direct":
        index = _difference_index(tuple(shape))
        out = np.empty_like(field)
        step = max(1, DIRECT_CHUNK_CELLS // (cells * cells))
        for start in range(0, field.shape[0], step):
            stop = start + step
            out[start:stop] = np.einsum("tyx,tx->ty", rows[start:stop][:, index], field[start:stop])
        return out
    if method != "fft":
        raise ParameterRangeError("method", f"expected fft, direct or auto, got {method!r}")
    axes = tuple(range(1, len(shape) + 1))
    full = (field.shape[0],) + tuple(shape)
    values = sp_fft.ifftn(
        sp_fft.fftn(field.reshape(full), axes=axes) * sp_fft.fftn(rows.reshape(full), axes=axes), axes=axes
    ).real.reshape(field.shape)
    # Exact zero pattern from the convolution of the two indicators
    hits = sp_fft.ifftn(
        sp_fft.fftn((field > 0).astype(np.float64).reshape(full), axes=axes)
        * sp_fft.fftn((rows > 0).astype(np.float64).reshape(full), axes=axes),
        axes=axes,
    ).real.reshape(field.shape)
    tiny = np.finfo(np.float64).tiny
    return np.where(hits > 0.5, np.maximum(values, tiny), 0.0)
