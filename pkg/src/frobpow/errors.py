"""Exception types shared across the library."""


class ValidationError(ValueError):
    """An input violates a documented precondition (bad prime, wrong class, ...)."""


class ResourceLimitError(RuntimeError):
    """A configurable enumeration or search cap was exceeded."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; indicates a bug, never expected on valid input."""
