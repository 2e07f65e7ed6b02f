"""Exception hierarchy and search caps."""

from __future__ import annotations

import os

CAP_ENV = "HELLY_PIERCER_CAP"


class BoxHellyError(Exception):
    """Base class for all errors raised by boxhelly."""


class DimensionError(BoxHellyError, ValueError):
    pass


class CapExceeded(BoxHellyError):
    """An exhaustive search would exceed its configured size cap."""


class PremiseViolation(BoxHellyError):
    """The premise of a constructive routine does not hold.

    ``violation`` carries the offending colorful tuple.
    """

    def __init__(self, message: str, violation: tuple[int, ...]):
        super().__init__(message)
        self.violation = violation


class WitnessError(BoxHellyError):
    """A constructed witness failed exact re-validation."""

    def __init__(self, message: str, offending: object = None):
        super().__init__(message)
        self.offending = offending


class UnsupportedParameters(BoxHellyError, ValueError):
    pass


def cap(default: int) -> int:
    """Return the size cap for an exhaustive search.

    ``HELLY_PIERCER_CAP`` replaces every default when set.
    """
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise BoxHellyError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise BoxHellyError(f"{CAP_ENV} must be positive, got {value}")
    return value


def check_cap(size: int, default: int, what: str) -> None:
    limit = cap(default)
    if size > limit:
        raise CapExceeded(f"{what}: size {size} exceeds cap {limit} (set {CAP_ENV} to override)")
