import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar, Union

import numpy as np

T = TypeVar("T")

SIGNIFICANT_DIGITS = 12


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """
    Formats a float with a fixed number of significant digits so outputs diff cleanly.
    Infinite and NaN values are spelled out.
    """
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def parse_norm_index(p: Union[str, float, int]) -> float:
    """
    Maps a norm index given as text or number (e.g., '2', 'inf') to a float in [1, inf].
    """
    if isinstance(p, str):
        text = p.strip().lower()
        if text in ("inf", "infinity", "max"):
            return math.inf
        p = float(text)
    p = float(p)
    if not p >= 1.0:
        raise ValueError(f"Unsupported norm index: {p}")
    return p


def parse_csv_list(raw: Optional[str]) -> Optional[List[str]]:
    """
    Splits a comma-separated option into stripped items, or returns None.
    """
    if raw is None:
        return None
    return [item.strip() for item in raw.split(",") if item.strip()]


def chunk_bounds(total: int, chunk_size: int) -> List[tuple]:
    """
    Splits [0, total) into consecutive (start, stop) pairs of at most chunk_size.
    """
    chunk_size = max(1, int(chunk_size))
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def map_chunks(
    fn: Callable[[np.ndarray], T],
    keys: np.ndarray,
    chunk_size: int,
    threads: int = 1,
) -> List[T]:
    """
    Applies fn to consecutive slices of keys and returns the results in slice
    order. With threads > 1 the slices run on a thread pool; the ordering makes
    the concatenated result independent of the worker count.
    """
    bounds = chunk_bounds(len(keys), chunk_size)
    if threads <= 1 or len(bounds) <= 1:
        return [fn(keys[start:stop]) for start, stop in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: fn(keys[b[0]:b[1]]), bounds))


def pairs(count: int) -> Sequence[tuple]:
    """Unordered index pairs (i, j) with i < j."""
    return [(i, j) for i in range(count) for j in range(i + 1, count)]


def round_significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """The float that ``format_float`` prints; used before handing numbers to polars."""
    return float(format_float(value, digits))
