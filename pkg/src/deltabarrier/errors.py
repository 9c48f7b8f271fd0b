"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the region where a formula is defined."""


class FaddeevaOverflowError(OverflowError):
    """exp(-z**2) overflows while reflecting a lower half-plane argument."""


class NoValidWindowError(ValueError):
    """A short-time window is empty once the safety factors are applied."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, achieved_error=float("nan")):
        super().__init__(f"{message} (achieved error estimate {achieved_error:.3e})")
        self.achieved_error = achieved_error


class FitError(ValueError):
    """Log-log exponent fit cannot be carried out on the supplied samples."""


class ConfigurationError(ValueError):
    """Invalid classifier or scenario configuration."""


class TransmittedOnlyError(ValueError):
    """Samples taken on the reflected side were passed to the classifier."""
