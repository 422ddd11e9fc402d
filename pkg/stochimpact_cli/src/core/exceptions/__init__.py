from .model_exceptions import (
    DegenerateZeta,
    HorizonBoundary,
    InvalidInitialState,
    ModelError,
    NonPositiveTemporaryImpact,
    NotApplicable,
    OrderViolation,
    SingularDenominator,
)
from .numerical_exceptions import (
    NonConvergence,
    PathFailure,
    SingularCovariance,
    StepTooSmall,
)


__all__ = [
    "DegenerateZeta",
    "HorizonBoundary",
    "InvalidInitialState",
    "ModelError",
    "NonConvergence",
    "NonPositiveTemporaryImpact",
    "NotApplicable",
    "OrderViolation",
    "PathFailure",
    "SingularCovariance",
    "SingularDenominator",
    "StepTooSmall",
]
