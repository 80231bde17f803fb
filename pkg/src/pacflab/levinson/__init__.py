"""
PACFLab Levinson Module

Durbin-Levinson oracle for the PACF and the prediction-error ratio.
"""

from pacflab.levinson.recursion import (
    LevinsonState,
    delta_ratio,
    levinson_durbin,
    pacf_via_levinson,
)

__all__ = [
    "LevinsonState",
    "levinson_durbin",
    "pacf_via_levinson",
    "delta_ratio",
]
