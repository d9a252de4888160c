"""Exception types shared across the package."""


class NumericError(RuntimeError):
    """A numeric routine failed to meet its accuracy contract."""


class QuadratureError(NumericError):
    """Adaptive quadrature did not converge to the requested tolerance.

    Carries the achieved error estimate so callers can report how far off
    the result is.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ConfigError(ValueError):
    """Scenario file rejected: unknown key, bad value, or broken invariant."""
