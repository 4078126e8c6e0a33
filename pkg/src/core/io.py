import json
import math
import os
from typing import Any, Dict, Optional

import numpy as np

from src.core.distributions import DiscreteDistribution
from src.core.spaces import CIRCLE, DISCRETE, EXPLICIT, GRID, TORUS, CostSpace, validate_space
from src.exceptions import DistributionError
from src.logger_config import setup_logger

logger = setup_logger(__name__)


def read_json(path: str) -> Any:
    """Reads a JSON document. OSError and JSONDecodeError propagate to the caller."""
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_space_json(path: str) -> CostSpace:
    space = validate_space(read_json(path))
    logger.info(f"Loaded {space.kind} space with {space.size} points from {path}")
    return space


def load_distribution_json(path: str, space: Optional[CostSpace] = None) -> DiscreteDistribution:
    """
    Loads {"space": "<path>", "mass": [...]}. The space path is resolved
    relative to the distribution file; a preloaded ``space`` skips that read.
    """
    raw = read_json(path)
    if not isinstance(raw, dict):
        raise DistributionError(f"mass: distribution file {path} must hold a JSON object")
    if "mass" not in raw:
        raise DistributionError(f"mass: missing from distribution file {path}")
    if space is None:
        if "space" not in raw:
            raise DistributionError(f"space: missing from distribution file {path}")
        space_path = raw["space"]
        if not os.path.isabs(space_path):
            space_path = os.path.join(os.path.dirname(os.path.abspath(path)), space_path)
        space = load_space_json(space_path)
    return DiscreteDistribution(space, raw["mass"])


def space_to_dict(space: CostSpace) -> Dict[str, Any]:
    out: Dict[str, Any] = {"kind": space.kind, "q": space.q}
    if space.kind == EXPLICIT:
        out["dist"] = space.dist.tolist()
        out["metric"] = space.metric
        if space.coords is not None:
            out["coords"] = space.coords.tolist()
    elif space.kind == DISCRETE:
        out["s"] = space.size
    elif space.kind in (GRID, TORUS):
        out.update({"n": space.n, "s": space.s, "p": "inf" if math.isinf(space.p) else space.p})
    elif space.kind == CIRCLE:
        out["positions"] = space.positions.tolist()
    return out


def dump_space_json(space: CostSpace, path: str) -> str:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(space_to_dict(space), fh)
    return path


def dump_distribution_json(dist: DiscreteDistribution, path: str, space_path: str) -> str:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"space": space_path, "mass": np.asarray(dist.mass).tolist()}, fh)
    return path
