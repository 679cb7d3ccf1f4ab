"""Exception hierarchy shared by every module."""


class ThreshForgeError(ValueError):
    """Base class for all toolkit errors."""


class DimensionMismatch(ThreshForgeError):
    pass


class EmptyImage(ThreshForgeError):
    pass


class DegenerateHistogram(ThreshForgeError):
    """Raised when no threshold separates the histogram into two classes."""


class InvalidSigma(ThreshForgeError):
    pass


class EmptyInput(ThreshForgeError):
    pass


class TooFewDistinctPoints(ThreshForgeError):
    pass


class IndexOutOfRange(ThreshForgeError):
    pass


class ShapeOutOfBounds(ThreshForgeError):
    pass


class ImageFormatError(ThreshForgeError):
    """Unreadable or unsupported image file."""
