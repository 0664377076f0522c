class EngineError(Exception):
    """Base class for errors raised by the DPLL(T) engine."""


class SolveTimeout(EngineError):
    """Raised when a cooperative deadline expires in the middle of a search."""
