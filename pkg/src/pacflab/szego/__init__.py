"""
PACFLab Szego Module

Density synthesis and cepstral factorization for models given by
their autocovariance.
"""

from pacflab.szego.factorization import (
    baxter_condition,
    density_from_autocov,
    factorize,
    log_coefficients,
    power_law_autocov,
)
from pacflab.szego.models import BaxterReport, CepstrumResult, SpectralGrid

__all__ = [
    # Models
    "SpectralGrid",
    "CepstrumResult",
    "BaxterReport",
    # Operations
    "density_from_autocov",
    "factorize",
    "log_coefficients",
    "power_law_autocov",
    "baxter_condition",
]
