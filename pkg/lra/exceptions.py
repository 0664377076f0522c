class LraError(Exception):
    """Base class for errors raised by the linear arithmetic layer."""


class UnregisteredUnknownError(LraError):
    """Raised when an atom mentions an unknown the context does not know about."""


class EmptyStackError(LraError):
    """Raised by pop() without a matching push()."""


class ModelCheckError(LraError):
    """Raised when an extracted model fails to satisfy an asserted atom. Must never fire."""
