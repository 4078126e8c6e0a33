import os
import logging
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv, find_dotenv

from src.exceptions import ParameterRangeError

logger = logging.getLogger(__name__)

_ENV_LOADED = False

DEFAULT_ORACLE_MAX_SUPPORT = 4096
DEFAULT_KERNEL_SAMPLE_BUDGET = 1 << 20


def _load_env_if_not_loaded():
    """
    Loads environment variables from .env file if not already loaded.
    Variables already present in the process environment win.
    """
    global _ENV_LOADED
    if not _ENV_LOADED:
        dotenv_path = find_dotenv(usecwd=True)
        loaded = load_dotenv(dotenv_path=dotenv_path, override=False)
        logger.debug(f".env file loaded: {loaded} from path: {dotenv_path}")
        _ENV_LOADED = True


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.strip(), 0)
    except ValueError:
        raise ParameterRangeError(name, f"expected an integer, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    """
    Resolved runtime configuration.

    Attributes:
        seed (Optional[int]): PAIRWISE_OT_SEED; overrides --seed when set.
        threads (int): Worker count for trial chunks.
        oracle_max_support (int): Largest support the exact oracle accepts.
        kernel_sample_budget (int): Quadrature samples allowed per torus kernel table.
    """

    seed: Optional[int] = None
    threads: int = 1
    oracle_max_support: int = DEFAULT_ORACLE_MAX_SUPPORT
    kernel_sample_budget: int = DEFAULT_KERNEL_SAMPLE_BUDGET


def get_settings(
    seed: Optional[int] = None,
    threads: Optional[int] = None,
    oracle_max_support: Optional[int] = None,
    kernel_sample_budget: Optional[int] = None,
) -> Settings:
    """
    Builds Settings from explicit arguments, falling back to environment
    variables and then to defaults. PAIRWISE_OT_SEED is the one exception:
    when set it replaces the seed argument.

    Raises:
        ParameterRangeError: If a variable is malformed or out of range.
    """
    _load_env_if_not_loaded()

    env_seed = _env_int("PAIRWISE_OT_SEED", None)
    resolved_seed = env_seed if env_seed is not None else seed
    if env_seed is not None and seed is not None and env_seed != seed:
        logger.info(f"PAIRWISE_OT_SEED={env_seed} overrides requested seed {seed}")

    resolved_threads = threads if threads is not None else _env_int("PAIRWISE_OT_THREADS", 1)
    resolved_limit = (
        oracle_max_support
        if oracle_max_support is not None
        else _env_int("PAIRWISE_OT_ORACLE_MAX_SUPPORT", DEFAULT_ORACLE_MAX_SUPPORT)
    )
    resolved_budget = (
        kernel_sample_budget
        if kernel_sample_budget is not None
        else _env_int("PAIRWISE_OT_KERNEL_BUDGET", DEFAULT_KERNEL_SAMPLE_BUDGET)
    )

    if resolved_threads < 1:
        raise ParameterRangeError("threads", f"must be >= 1, got {resolved_threads}")
    if resolved_limit < 1:
        raise ParameterRangeError("oracle_max_support", f"must be >= 1, got {resolved_limit}")
    if resolved_budget < 1:
        raise ParameterRangeError("kernel_sample_budget", f"must be >= 1, got {resolved_budget}")

    return Settings(
        seed=resolved_seed,
        threads=resolved_threads,
        oracle_max_support=resolved_limit,
        kernel_sample_budget=resolved_budget,
    )
