"""
Keyed, counter-style randomness.

Every random quantity in the package (race variables, phases, quantile levels,
permutations) is a pure function of a 64-bit master seed and a namespace path.
Keys are folded along the path with a SplitMix64-style finalizer:

    root          = mix(master_seed + GOLDEN)
    fold(k, tok)  = mix(mix(k + GOLDEN) ^ word(tok))
    word("str")   = first 8 bytes of blake2b(str) read little-endian
    word(int)     = mix((int mod 2^64) ^ INT_SALT)
    uniform(k)    = ((k >> 11) + 1) * 2^-53         in (0, 1]

All arithmetic runs on numpy uint64 arrays so one key or a million trial keys
go through the same code path and produce bit-identical values.
"""

import hashlib
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Tuple, Union

import numpy as np

_MASK64 = (1 << 64) - 1
GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INT_SALT = 0xD1B54A32D192ED03
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_UNIT = 2.0 ** -53

Token = Union[str, int, np.integer, np.ndarray]
Path = Tuple[Token, ...]


def _mix(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _S30)) * _M1
        z = (z ^ (z >> _S27)) * _M2
        return z ^ (z >> _S31)


@lru_cache(maxsize=4096)
def _string_word(token: str) -> np.uint64:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8, person=b"pairwise-ot").digest()
    return np.uint64(int.from_bytes(digest, "little"))


def _token_word(token: Token) -> np.ndarray:
    if isinstance(token, str):
        return np.atleast_1d(_string_word(token))
    if isinstance(token, np.ndarray):
        words = token.astype(np.int64).view(np.uint64) ^ np.uint64(_INT_SALT)
        return _mix(words)
    if isinstance(token, (int, np.integer)):
        words = np.array([(int(token) & _MASK64) ^ _INT_SALT], dtype=np.uint64)
        return _mix(words)
    raise TypeError(f"Unsupported namespace token type: {type(token).__name__}")


def fold(keys: np.ndarray, token: Token) -> np.ndarray:
    """Extends every key by one path token; broadcasts keys against array tokens."""
    keys = np.asarray(keys, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return _mix(_mix(keys + GOLDEN) ^ _token_word(token))


def fold_path(keys: np.ndarray, path: Iterable[Token]) -> np.ndarray:
    for token in path:
        keys = fold(keys, token)
    return keys


def to_unit(words: np.ndarray) -> np.ndarray:
    """Maps 64-bit words to floats in (0, 1] with 53-bit resolution."""
    return ((words >> _S11).astype(np.float64) + 1.0) * _UNIT


def master_keys(seeds: Union[int, Iterable[int], np.ndarray]) -> np.ndarray:
    """Root keys for one or many master seeds."""
    if isinstance(seeds, (int, np.integer)):
        raw = np.array([int(seeds) & _MASK64], dtype=np.uint64)
    else:
        raw = np.asarray(seeds)
        if raw.dtype != np.uint64:
            raw = raw.astype(np.int64).view(np.uint64)
    with np.errstate(over="ignore"):
        return _mix(np.atleast_1d(raw) + GOLDEN)


@dataclass(frozen=True)
class SeedContext:
    """
    A master seed plus a namespace path. Immutable; ``child`` extends the path.
    """

    master_seed: int
    path: Path = field(default_factory=tuple)

    @cached_property
    def keys(self) -> np.ndarray:
        """The folded key as a length-1 uint64 array."""
        return fold_path(master_keys(self.master_seed), self.path)

    @property
    def key(self) -> np.uint64:
        return self.keys[0]

    def child(self, *tokens: Token) -> "SeedContext":
        return SeedContext(self.master_seed, tuple(self.path) + tuple(tokens))


def as_seed(seed: Union[SeedContext, int]) -> SeedContext:
    return seed if isinstance(seed, SeedContext) else SeedContext(int(seed))


def _as_path(path) -> Path:
    if isinstance(path, (str, int, np.integer)):
        return (path,)
    return tuple(path)


def trial_keys(seed: Union[SeedContext, int], trials: Union[int, np.ndarray], tag: str = "trial") -> np.ndarray:
    """
    Child keys derive(seed, (tag, t)) for every trial index t. ``trials`` is a
    count (indices 0..trials-1) or an explicit integer array.
    """
    seed = as_seed(seed)
    indices = np.arange(trials, dtype=np.int64) if np.isscalar(trials) else np.asarray(trials, dtype=np.int64)
    return fold(fold(seed.keys, tag), indices)


def uniform_from_keys(keys: np.ndarray, *path: Token) -> np.ndarray:
    return to_unit(fold_path(np.asarray(keys, dtype=np.uint64), path))


def exponential_from_keys(keys: np.ndarray, level: int, points: np.ndarray) -> np.ndarray:
    """
    Race variables V[level, x] = -ln(uniform(key, "exp", level, x)) for every key
    and every point; returns an array of shape (len(keys), len(points)).
    """
    base = fold(fold(np.asarray(keys, dtype=np.uint64), "exp"), int(level))
    words = fold(base[:, None], np.asarray(points, dtype=np.int64)[None, :])
    return -np.log(to_unit(words))


def derive_uniform(seed: Union[SeedContext, int], path) -> float:
    """Deterministic uniform in (0, 1] for (seed, path)."""
    return float(uniform_from_keys(as_seed(seed).keys, *_as_path(path))[0])


def derive_exponential(seed: Union[SeedContext, int], level: int, point: int) -> float:
    """Exp(1) race variable; equals -ln(derive_uniform(seed, ("exp", level, point)))."""
    return float(exponential_from_keys(as_seed(seed).keys, level, np.array([point]))[0, 0])
