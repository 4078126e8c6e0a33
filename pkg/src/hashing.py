from functools import lru_cache
from typing import Any, Dict, Union

import numpy as np

from src.core.distributions import DiscreteDistribution, require_same_space
from src.core.seeding import SeedContext, as_seed
from src.core.spaces import CIRCLE, DISCRETE, EXPLICIT, GRID, KINDS, TORUS, CostSpace
from src.couplings.samplers import circle_sample_batch, permuted_quantile_sample_batch, quantile_sample_batch
from src.exceptions import ParameterRangeError, UnsupportedHasherError
from src.logger_config import setup_logger
from src.poisson.pfr import pfr_select_batch
from src.spfr.metric_hash import hash_metric_batch
from src.spfr.schedule import DEFAULT_ETA
from src.spfr.torus_hash import hash_torus_batch
from src.spfr.ultrametric import build_minimax_ultrametric

logger = setup_logger(__name__)


@lru_cache(maxsize=16)
def _ultrametric_for(space: CostSpace) -> CostSpace:
    return build_minimax_ultrametric(space)


class Hasher:
    """
    Named coupling sampler. Every distribution hashed with the same key
    through the same Hasher is part of one coupling, so the pairwise cost of
    two hashes estimates how well that coupling transports one into the other.
    """

    CONFIG = {
        "poisson": {
            "method": "_sample_poisson",
            "kinds": KINDS,
            "options": {},
        },
        "metric": {
            "method": "_sample_metric",
            "kinds": KINDS,
            "options": {"reduced": False, "eta": DEFAULT_ETA},
        },
        "torus": {
            "method": "_sample_torus",
            "kinds": (GRID, TORUS),
            "options": {"resolution": None, "eta": None, "method": "auto"},
        },
        "ultrametric": {
            "method": "_sample_ultrametric",
            "kinds": KINDS,
            "options": {"reduced": False, "eta": DEFAULT_ETA},
        },
        "quantile": {
            "method": "_sample_quantile",
            "kinds": (EXPLICIT, DISCRETE, GRID),
            "options": {},
        },
        "permuted": {
            "method": "_sample_permuted",
            "kinds": (DISCRETE,),
            "options": {},
        },
        "circle": {
            "method": "_sample_circle",
            "kinds": (CIRCLE,),
            "options": {},
        },
    }

    def __init__(self, name: str, **options: Any):
        if name not in self.CONFIG:
            raise UnsupportedHasherError(f"algo: unknown hasher {name!r}; expected one of {sorted(self.CONFIG)}")
        self.name = name
        self.hasher_config = self.CONFIG[name]
        unknown = set(options) - set(self.hasher_config["options"])
        if unknown:
            raise ParameterRangeError(sorted(unknown)[0], f"not an option of hasher {name!r}")
        self.options: Dict[str, Any] = {**self.hasher_config["options"], **options}
        self._sampler = getattr(self, self.hasher_config["method"])
        logger.debug(f"Hasher initialized: {name} {self.options}")

    def __repr__(self) -> str:
        return f"Hasher({self.name!r}, {self.options})"

    def describe(self) -> Dict[str, Any]:
        return {"algo": self.name, **{k: v for k, v in self.options.items() if v is not None}}

    def check_space(self, space: CostSpace) -> None:
        if space.kind not in self.hasher_config["kinds"]:
            raise UnsupportedHasherError(
                f"space: hasher {self.name!r} does not support kind {space.kind!r}; "
                f"supported: {list(self.hasher_config['kinds'])}"
            )

    def sample_batch(self, space: CostSpace, P: DiscreteDistribution, keys: np.ndarray) -> np.ndarray:
        """One point index per key."""
        require_same_space(P, space=space)
        self.check_space(space)
        return np.asarray(self._sampler(space, P, np.asarray(keys, dtype=np.uint64)), dtype=np.int64)

    def sample(self, space: CostSpace, P: DiscreteDistribution, seed: Union[SeedContext, int]) -> int:
        return int(self.sample_batch(space, P, as_seed(seed).keys)[0])

    def _sample_poisson(self, space, P, keys):
        return pfr_select_batch(P, keys)[0]

    def _sample_metric(self, space, P, keys):
        return hash_metric_batch(space, P, keys, eta=self.options["eta"], reduced=self.options["reduced"])

    def _sample_torus(self, space, P, keys):
        return hash_torus_batch(
            space,
            P,
            keys,
            resolution=self.options["resolution"],
            eta=self.options["eta"],
            method=self.options["method"],
        )

    def _sample_ultrametric(self, space, P, keys):
        ultra = _ultrametric_for(space)
        moved = DiscreteDistribution(ultra, P.mass)
        return hash_metric_batch(ultra, moved, keys, eta=self.options["eta"], reduced=self.options["reduced"])

    def _sample_quantile(self, space, P, keys):
        return quantile_sample_batch(P, keys)

    def _sample_permuted(self, space, P, keys):
        return permuted_quantile_sample_batch(P, keys)

    def _sample_circle(self, space, P, keys):
        return circle_sample_batch(P, keys)
