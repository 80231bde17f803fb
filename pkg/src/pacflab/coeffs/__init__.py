"""
PACFLab Coefficients Module

Model specifications and their MA, AR, psi/phi and autocovariance
sequences. Process models live in pacflab.coeffs.registry.
"""

from pacflab.coeffs.generators import (
    FarimaAsymptotics,
    autocov_from_ma,
    convolution_residual,
    farima_ar_coeffs,
    farima_asymptotic_constants,
    farima_autocov,
    farima_ma_coeffs,
    impulse_response,
    psi_phi_coeffs,
)
from pacflab.coeffs.models import (
    CoefficientSequence,
    DecayClass,
    DecayKind,
    FarimaSpec,
    SequenceKind,
    TruncationPolicy,
)

__all__ = [
    # Models
    "FarimaSpec",
    "TruncationPolicy",
    "CoefficientSequence",
    "SequenceKind",
    "DecayClass",
    "DecayKind",
    "FarimaAsymptotics",
    # Operations
    "farima_ma_coeffs",
    "farima_ar_coeffs",
    "psi_phi_coeffs",
    "autocov_from_ma",
    "farima_autocov",
    "impulse_response",
    "convolution_residual",
    "farima_asymptotic_constants",
]
