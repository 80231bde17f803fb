"""
PACFLab Beta Module

The kernel sequences beta and beta_- with tail control and continuation.
"""

from pacflab.beta.kernels import (
    O1nReport,
    beta_minus,
    beta_standard,
    farima_beta,
    farima_extension,
    fit_extension,
    o1n_diagnostic,
)
from pacflab.beta.models import BetaExtension, BetaSequence, BetaVariant, ExtensionKind

__all__ = [
    # Models
    "BetaSequence",
    "BetaVariant",
    "BetaExtension",
    "ExtensionKind",
    "O1nReport",
    # Operations
    "beta_standard",
    "beta_minus",
    "farima_beta",
    "farima_extension",
    "fit_extension",
    "o1n_diagnostic",
]
