"""Domain error types shared across the package."""


class LackwalkError(Exception):
    """Base class for every domain error raised by lackwalk."""


class NoPeakFound(LackwalkError):
    """The success-probability series never turned over within the horizon."""


class GridTooLarge(LackwalkError):
    """Dense-operator construction was requested above the tractable grid cap."""


class NotOrthogonal(LackwalkError):
    """A matrix expected to be orthogonal deviates beyond tolerance."""


class NotReflection(LackwalkError):
    """(I - F) / 2 is not a projector, so F is not a reflection operator."""


class DivergentSum(LackwalkError):
    """A spectral sum picks up weight at a rotation angle too close to zero."""


class InsufficientData(LackwalkError):
    """Too few successful rows to fit the runtime model."""
