import time

from .exceptions import SolveTimeout


class Deadline:
    """
    Wall-clock budget checked cooperatively between phases and decisions.
    A deadline built from ``None`` never expires.
    """

    def __init__(self, timeout_ms=None, clock=time.monotonic):
        self._clock = clock
        self.timeout_ms = timeout_ms
        self._expires = None if timeout_ms is None else clock() + timeout_ms / 1000

    @classmethod
    def never(cls):
        return cls(None)

    @property
    def expired(self):
        return self._expires is not None and self._clock() >= self._expires

    def remaining_ms(self):
        if self._expires is None:
            return None
        return max(0.0, (self._expires - self._clock()) * 1000)

    def check(self, where=""):
        if self.expired:
            raise SolveTimeout(f"Deadline of {self.timeout_ms} ms expired{' during ' + where if where else ''}.")
