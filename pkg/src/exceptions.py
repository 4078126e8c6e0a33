"""
Error hierarchy. Everything derives from ValueError so call sites that only
know about configuration errors keep working.
"""

from typing import Optional


class PairwiseOTError(ValueError):
    """Base class for all input and parameter errors raised by this package."""


class SpaceValidationError(PairwiseOTError):
    """A cost matrix or space description failed validation."""


class AsymmetricCostError(SpaceValidationError):
    pass


class NegativeCostError(SpaceValidationError):
    pass


class NonzeroDiagonalError(SpaceValidationError):
    pass


class ZeroDistanceError(SpaceValidationError):
    pass


class TriangleInequalityError(SpaceValidationError):
    pass


class DistributionError(PairwiseOTError):
    """Mass vector is negative, empty, unnormalizable or off by more than the tolerance."""


class SpaceMismatchError(PairwiseOTError):
    """Two objects that must share a space do not."""


class OracleLimitError(PairwiseOTError):
    """Support size exceeds what the exact transport oracle accepts."""


class UnorderedSpaceError(PairwiseOTError):
    """The operation needs a total order on the points."""


class ZeroRowMassError(PairwiseOTError):
    """Conditioning on a point that carries no mass in the plan."""


class IncomparableSketchError(PairwiseOTError):
    """Sketches built under different seeds, sizes or hashers."""


class TaskSequenceError(PairwiseOTError):
    """Malformed online task sequence."""


class UnsupportedHasherError(PairwiseOTError):
    """Unknown hasher name or a hasher applied to a space kind it cannot handle."""


class InstanceConditionError(PairwiseOTError):
    """A lower-bound instance violates its defining condition at ``index``."""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class ParameterRangeError(PairwiseOTError):
    """A numeric parameter lies outside the range its formula is stated for."""

    def __init__(self, field: str, message: str, statement: Optional[str] = None):
        prefix = f"[{statement}] " if statement else ""
        super().__init__(f"{prefix}{field}: {message}")
        self.field = field
        self.statement = statement
