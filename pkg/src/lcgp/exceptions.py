"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Raised for invalid model or pipeline configuration."""


class NumericalError(ArithmeticError):
    """Raised when a numerically guarded operation fails.

    Carries the list of diagonal jitter levels that were attempted before
    giving up, when applicable.
    """

    def __init__(self, message, attempted_jitters=None):
        super().__init__(message)
        self.attempted_jitters = list(attempted_jitters or [])


class MetricError(ValueError):
    """Raised when an evaluation metric is undefined for its inputs."""
