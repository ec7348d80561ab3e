class ParameterError(ValueError):
    """Invalid walk parameters or state."""


class ResourceLimitError(RuntimeError):
    """Request exceeds a configured size ceiling."""


class RegimeError(ValueError):
    """Quantity requested outside the regime where it is defined."""
