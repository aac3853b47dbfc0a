"""Exception types shared across the package."""


class InvalidArrangementError(ValueError):
    """An occupation vector violates the basic constraints (length, sum, sign)."""


class ResourceLimitError(RuntimeError):
    """A computation was refused because it exceeds a configured size cap."""


class CacheCorruptionError(RuntimeError):
    """A cache entry failed its integrity check and could not be replaced."""
