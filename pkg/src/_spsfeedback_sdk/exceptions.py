class SpsFeedbackException(Exception):
    """Base class for all spsfeedback specific exceptions."""

    ...


class InvalidArgumentError(SpsFeedbackException, ValueError):
    """Raised when an operation receives arguments outside its contract (bad dimensions, indices, rates)."""

    def __init__(self, message, value=None):
        self.value = value
        self.message = f"InvalidArgumentError: {message}"
        super().__init__(self.message)


class DomainError(SpsFeedbackException, ValueError):
    """Raised when a closed-form rate expression is evaluated outside the region where it is valid."""

    def __init__(self, message, value=None):
        self.value = value
        self.message = f"DomainError: {message}"
        super().__init__(self.message)


class NumericError(SpsFeedbackException):
    """Base class for failures of the numerical machinery (eigensolvers, integrators, invariants)."""

    def __init__(self, message):
        self.message = message
        super().__init__(message)


class IntegrationError(NumericError):
    """Raised when Runge-Kutta integration drifts away from a unit-trace state."""

    def __init__(self, drift, dt):
        self.drift = drift
        self.dt = dt
        super().__init__(
            f"IntegrationError: trace drifted by {drift:.3e} with dt={dt:g}. Retry with a smaller --dt."
        )


class DefectiveDecompositionError(NumericError):
    """Raised when a spectral decomposition is too ill-conditioned to expand states in."""

    def __init__(self, condition):
        self.condition = condition
        super().__init__(
            f"DefectiveDecompositionError: eigenvector condition number {condition:.3e} exceeds the limit."
        )


class PositivityViolationError(NumericError):
    """Raised when a density state or probability leaves its physical range beyond tolerance."""

    def __init__(self, message, value=None):
        self.value = value
        super().__init__(f"PositivityViolationError: {message}")
