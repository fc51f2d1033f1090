"""Exception types shared across the package."""


class MonorbitError(Exception):
    """Base class for package-specific failures."""


class FactorizationError(MonorbitError):
    """A rational part could not be fully factored at desk scale."""


class ResourceLimitError(MonorbitError):
    """A configured size or budget limit was exceeded."""


class PrecisionError(MonorbitError):
    """Interval arithmetic could not certify a strict inequality."""


class UnsuitablePrimeError(MonorbitError):
    """A modular-evaluation prime violates its side conditions."""
