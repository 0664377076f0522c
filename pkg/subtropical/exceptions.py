class SubtropicalError(Exception):
    """Base class for errors raised by the subtropical pipeline."""


class ProblemError(SubtropicalError):
    """Raised when a problem is malformed (zero constraint, mixed dimensions)."""


class BaseSearchExhausted(SubtropicalError):
    """Raised when no base 2^(2^j) within the squaring budget makes every constraint positive."""


class WitnessVerificationError(SubtropicalError):
    """Raised when a constructed witness fails exact re-evaluation. Must never fire."""
