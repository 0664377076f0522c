class RunError(Exception):
    """Base class for errors raised while running scripts."""


class RunInputError(RunError):
    """Unreadable file or malformed script."""


class RunConfigError(RunError):
    """Invalid run configuration."""


class WitnessMismatchError(RunError):
    """A witness failed the second, term-level check against its source script."""
