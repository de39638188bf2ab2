"""Exception hierarchy shared across the toolkit.

Every error raised by tappy derives from :class:`TappyError`, so callers can
catch one type at the boundary (the CLI maps them all to exit code 2).
"""

from __future__ import annotations

from collections.abc import Iterable


class TappyError(Exception):
    """Base class for all tappy errors."""


class DomainError(TappyError, ValueError):
    """A numeric argument is outside the function's domain."""


class UnattainableRateError(DomainError):
    """The requested success rate is at or above the model's ceiling.

    Carries the asymptotic ceiling so callers can report what *is*
    attainable.
    """

    def __init__(self, message: str, ceiling: float):
        super().__init__(message)
        self.ceiling = ceiling


class ParseError(TappyError, ValueError):
    """Input text could not be decoded into the expected structure."""


class ValidationError(ParseError):
    """Parsed input violates a structural invariant (strict mode)."""


class SelectionError(TappyError, ValueError):
    """An element-selection filter is malformed or inconsistent."""


class UnknownDeviceError(TappyError, KeyError):
    """Device id not present in the registry; lists the known ids."""

    def __init__(self, device_id: str, known_ids: Iterable[str]):
        super().__init__(device_id)
        self.device_id = device_id
        self.known_ids = list(known_ids)

    def __str__(self) -> str:
        return "unknown device {!r}; known ids: {}".format(
            self.device_id, ", ".join(self.known_ids)
        )
