"""Exception types raised across the package."""


class StbError(Exception):
    """Base class for all package errors."""


class DimensionError(StbError, ValueError):
    """Image or field has an unusable shape."""


class ParameterError(StbError, ValueError):
    """Algorithm parameter out of its valid range."""


class DecodeError(StbError, ValueError):
    """Image file could not be decoded."""


class ImageWriteError(StbError, OSError):
    """Image file could not be written."""


class MetricError(StbError, ValueError):
    """Inputs to a quality metric are incompatible."""


class NumericalError(StbError, ArithmeticError):
    """A field violates a numerical invariant (e.g. tensor not PSD)."""
