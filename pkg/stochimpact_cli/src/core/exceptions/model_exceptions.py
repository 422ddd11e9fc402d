from stochimpact_cli.cli.constants import EXIT_MODEL_ERROR
from stochimpact_cli.cli.exceptions import StochImpactError


class ModelError(StochImpactError):
    """
    Base class for errors raised while evaluating the execution model.

    Attributes:
        message (str): Description of the error.
        error_code (str): Application-specific error code.
        exit_code (int): CLI exit code used when the error escapes a command.
        rows (tuple[int, ...]): Batch rows on which the error occurred, filled in by the
            simulator (empty when unknown or for scalar inputs).
    """

    def __init__(self, message: str = "Model evaluation failed", error_code: str = "MODEL_ERROR"):
        """
        Initializes a ModelError instance.

        Args:
            message (str, optional): Description of the error.
            error_code (str, optional): Application-specific error code.
        """
        super().__init__(message, exit_code=EXIT_MODEL_ERROR)
        self.error_code = error_code
        self.rows: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.error_code}: {self.message}"


class NonPositiveTemporaryImpact(ModelError):
    """
    Raised when the temporary impact f(a) is not strictly positive at an evaluation point.

    Attributes:
        positions (tuple[int, ...]): Flat array positions of the offending points
            (empty for scalar inputs).
    """

    def __init__(self, message: str = "f(a) must be > 0", positions: tuple[int, ...] = ()):
        super().__init__(message, error_code="NON_POSITIVE_TEMPORARY_IMPACT")
        self.positions = positions

    def __reduce__(self):
        return (self.__class__, (self.message, self.positions))


class DegenerateZeta(ModelError):
    """Raised when kappa - g0/2 - sqrt(phi*f0) vanishes and zeta is undefined."""

    def __init__(self, message: str = "zeta denominator vanishes"):
        super().__init__(message, error_code="DEGENERATE_ZETA")


class SingularDenominator(ModelError):
    """
    Raised when theta0 blows up inside the trading horizon.

    Attributes:
        blowup_time (float): Time in [0, T] at which 1 - zeta*exp(2*gamma*(T - t)) vanishes.
    """

    def __init__(self, message: str, blowup_time: float):
        super().__init__(message, error_code="SINGULAR_DENOMINATOR")
        self.blowup_time = blowup_time

    def __reduce__(self):
        return (self.__class__, (self.message, self.blowup_time))


class HorizonBoundary(ModelError):
    """Raised when a limiting-regime formula is evaluated at t = T."""

    def __init__(self, message: str = "limiting regimes are not evaluable at t = T"):
        super().__init__(message, error_code="HORIZON_BOUNDARY")


class OrderViolation(ModelError):
    """Raised when a two-time quantity receives s < t."""

    def __init__(self, message: str = "expected t <= s"):
        super().__init__(message, error_code="ORDER_VIOLATION")


class InvalidInitialState(ModelError):
    """Raised when a CIR impact process starts at a non-positive level."""

    def __init__(self, message: str = "initial impact state must be > 0"):
        super().__init__(message, error_code="INVALID_INITIAL_STATE")


class NotApplicable(ModelError):
    """Raised when an operation does not apply to the given kind or regime."""

    def __init__(self, message: str = "operation not applicable"):
        super().__init__(message, error_code="NOT_APPLICABLE")
