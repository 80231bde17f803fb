"""
PACFLab Core Module

Foundational components for configuration, logging, errors and series arithmetic.
"""

from pacflab.core.config import (
    Settings,
    SzegoSettings,
    TruncationSettings,
    VerificationSettings,
    get_settings,
)
from pacflab.core.errors import (
    AccuracyError,
    ConfigError,
    DivergenceError,
    DomainError,
    FactorizationError,
    LengthError,
    ModelValidationError,
    NotPositiveDefiniteError,
    NumericalError,
    PacflabError,
    TruncationError,
)
from pacflab.core.logging import (
    LogContext,
    PacfEvents,
    bind_command_context,
    bind_model_context,
    clear_context,
    configure_logging,
    get_logger,
)

__all__ = [
    # Config
    "Settings",
    "TruncationSettings",
    "SzegoSettings",
    "VerificationSettings",
    "get_settings",
    # Logging
    "configure_logging",
    "get_logger",
    "LogContext",
    "PacfEvents",
    "bind_model_context",
    "bind_command_context",
    "clear_context",
    # Errors
    "PacflabError",
    "ConfigError",
    "ModelValidationError",
    "NumericalError",
    "DomainError",
    "LengthError",
    "TruncationError",
    "DivergenceError",
    "NotPositiveDefiniteError",
    "FactorizationError",
    "AccuracyError",
]
