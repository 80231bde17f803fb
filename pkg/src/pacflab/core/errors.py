"""
PACFLab Errors

Exception hierarchy shared by every module. Each error carries a
machine-readable category and the exit code the CLI maps it to.
"""

from typing import Any


class PacflabError(Exception):
    """Base exception for PACFLab errors."""

    category = "error"
    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.category, "message": str(self), **self.details}


class ConfigError(PacflabError):
    """Unparsable or contradictory run configuration."""

    category = "config"
    exit_code = 2


class ModelValidationError(PacflabError):
    """Model parameters that do not define a valid process."""

    category = "model_validation"
    exit_code = 3


class NumericalError(PacflabError):
    """A computation could not deliver its result within tolerance."""

    category = "numerical"
    exit_code = 4


class DomainError(NumericalError):
    """Operation requested outside its parameter domain."""

    category = "domain"


class LengthError(NumericalError):
    """A sequence is too short and cannot be extended."""

    category = "length"


class TruncationError(NumericalError):
    """Tail control of an infinite sum failed."""

    category = "truncation"


class DivergenceError(NumericalError):
    """The outer series over k does not contract."""

    category = "divergence"


class NotPositiveDefiniteError(NumericalError):
    """Autocovariance input is not positive definite."""

    category = "not_positive_definite"

    def __init__(self, message: str, order: int | None = None, **details: Any):
        super().__init__(message, order=order, **details)
        self.order = order


class FactorizationError(NumericalError):
    """Cepstral factorization residual exceeds the tolerance."""

    category = "factorization"

    def __init__(self, message: str, residual: float | None = None, **details: Any):
        super().__init__(message, residual=residual, **details)
        self.residual = residual


class AccuracyError(NumericalError):
    """Quadrature or fit could not reach its accuracy target."""

    category = "accuracy"
