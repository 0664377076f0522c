class EncodingError(Exception):
    """Base class for errors raised while building or clausifying formulas."""


class NotInFrameError(EncodingError):
    """Raised when a sign-membership formula is requested for a point outside the frame."""
