"""
PACFLab

Partial autocorrelation of stationary processes from their AR and MA
coefficients, cross-checked against the Durbin-Levinson recursion, with
numerical checks of the PACF asymptotic laws.
"""

__version__ = "0.1.0"

from pacflab.core import (
    PacflabError,
    Settings,
    configure_logging,
    get_logger,
    get_settings,
)

__all__ = [
    "__version__",
    "Settings",
    "get_settings",
    "configure_logging",
    "get_logger",
    "PacflabError",
]
