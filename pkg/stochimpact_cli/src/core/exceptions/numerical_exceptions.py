from .model_exceptions import ModelError


class NonConvergence(ModelError):
    """Raised when adaptive quadrature exhausts its refinement depth."""

    def __init__(self, message: str = "adaptive quadrature did not converge"):
        super().__init__(message, error_code="NON_CONVERGENCE")


class StepTooSmall(ModelError):
    """Raised when a finite-difference residual stops decreasing under step refinement."""

    def __init__(self, message: str = "finite-difference residual dominated by cancellation"):
        super().__init__(message, error_code="STEP_TOO_SMALL")


class SingularCovariance(ModelError):
    """Raised when the Gaussian kernel covariance is not positive definite."""

    def __init__(self, message: str = "kernel covariance is singular"):
        super().__init__(message, error_code="SINGULAR_COVARIANCE")


class PathFailure(ModelError):
    """
    Raised when a strategy fails on one Monte Carlo path and the run is aborted.

    Attributes:
        path_index (int): Index of the failing path.
        strategy (str): Name of the failing strategy.
    """

    def __init__(self, path_index: int, strategy: str, cause: str):
        super().__init__(
            f"path {path_index} failed under strategy '{strategy}': {cause}",
            error_code="PATH_FAILURE",
        )
        self.path_index = path_index
        self.strategy = strategy
        self.cause = cause

    def __reduce__(self):
        return (self.__class__, (self.path_index, self.strategy, self.cause))
