"""
Shared exception types for semiq components.
"""


class SemiqError(Exception):
    """Base exception for all semiq-related errors."""

    def __init__(self, message: str, details: str | None = None):
        self.message = message
        self.details = details
        super().__init__(message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message}: {self.details}"
        return self.message


class ConfigurationError(SemiqError):
    """Raised when configuration is invalid or missing."""

    pass


class ConfigParseError(ConfigurationError):
    """Raised when a key = value configuration file cannot be parsed."""

    def __init__(self, message: str, line_number: int, details: str | None = None):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}", details)


class ConfigValidationError(ConfigurationError):
    """Raised when a parsed configuration violates a model invariant."""

    def __init__(self, message: str, invariant: str | None = None):
        self.invariant = invariant
        super().__init__(message, invariant)


class NumericalError(SemiqError):
    """Base class for failures of the numerical machinery."""

    pass


class DomainError(NumericalError):
    """Raised when an algebraic relation is evaluated outside its domain."""

    pass


class DriftExceededError(NumericalError):
    """Raised when a conserved quantity drifts beyond the configured tolerance."""

    def __init__(self, quantity: str, drift: float, time: float, tolerance: float):
        self.quantity = quantity
        self.drift = drift
        self.time = time
        self.tolerance = tolerance
        super().__init__(
            f"relative drift of {quantity} exceeded tolerance",
            f"drift={drift:.3e} > {tolerance:.3e} at t={time:.6g}",
        )


class StepUnderflowError(NumericalError):
    """Raised when the adaptive step size collapses below the minimum step."""

    def __init__(self, time: float, step: float):
        self.time = time
        self.step = step
        super().__init__("adaptive step size underflow", f"dt={step:.3e} at t={time:.6g}")


class NonConvergedError(NumericalError):
    """Raised when a running estimate fails to settle over its final window."""

    def __init__(self, message: str, variation: float):
        self.variation = variation
        super().__init__(message, f"final-window variation {variation:.1%}")


class NoCrossingsError(NumericalError):
    """Raised when a trajectory never crosses the section plane."""

    pass


class UnreachableRegimeError(SemiqError):
    """Raised when a requested state lies beyond what the chosen description admits."""

    pass


class PureLimitError(UnreachableRegimeError):
    """Raised when multipliers are requested at I <= hbar^2/4 (they diverge there)."""

    pass


class DeltaLimitError(UnreachableRegimeError):
    """Raised when the classical distribution has collapsed to a delta function."""

    pass


class FactorizationInputError(DomainError):
    """Raised when the point-particle signs contradict the initial <L>."""

    pass
