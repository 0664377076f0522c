class PolynomialError(Exception):
    """Base class for errors raised by the exact polynomial layer."""


class DimensionMismatchError(PolynomialError):
    """Raised when a point, sign variant or exponent vector has the wrong length."""


class EmptyFrameError(PolynomialError):
    """Raised when a frame is requested for the zero polynomial."""
