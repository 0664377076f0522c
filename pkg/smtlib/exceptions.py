class SmtLibError(Exception):
    """Base class for errors raised while reading SMT-LIB2 scripts."""


class SmtLibSyntaxError(SmtLibError):
    """Malformed script; carries the 1-based position of the offending token."""

    def __init__(self, message, line=0, column=0):
        self.message = message
        self.line = line
        self.column = column
        if line:
            super().__init__(f"{line}:{column}: {message}")
        else:
            super().__init__(message)


class UnsupportedFeatureError(SmtLibError):
    """Well-formed input outside the strict polynomial inequality fragment."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)
