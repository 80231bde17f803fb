"""
PACFLab Representation Module

The PACF from the beta kernel through the d_k(n) series.
"""

from pacflab.representation.discretization import KernelDiscretization
from pacflab.representation.models import (
    ComparisonRow,
    ComparisonTable,
    PacfMethod,
    PacfSeries,
)

__all__ = [
    # Models
    "PacfSeries",
    "PacfMethod",
    "ComparisonRow",
    "ComparisonTable",
    "KernelDiscretization",
]
