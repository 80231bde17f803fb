"""
PACFLab Szego Models

Sampled spectral densities and the result of their cepstral factorization.
"""

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from pacflab.coeffs.models import CoefficientSequence


class SpectralGrid(BaseModel):
    """
    Delta(theta_j) at theta_j = -pi + 2 pi (j + 1/2)/N, j = 0..N-1.

    The half-bin offset keeps theta = 0 off the grid, where densities of
    models with d < 0 vanish. `floored` counts samples raised to `floor`.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    size: int = Field(ge=2)
    values: np.ndarray
    floor: float = 0.0
    floored: int = 0

    @field_validator("values", mode="before")
    @classmethod
    def freeze_values(cls, value: Any) -> np.ndarray:
        arr = np.array(value, dtype=np.float64)
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def check_grid(self) -> "SpectralGrid":
        if self.size & (self.size - 1):
            raise ValueError(f"grid size must be a power of two, got {self.size}")
        if len(self.values) != self.size:
            raise ValueError("values do not match the grid size")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0.0):
            raise ValueError("density samples must be finite and nonnegative")
        return self

    @property
    def theta(self) -> np.ndarray:
        return -math.pi + 2.0 * math.pi * (np.arange(self.size) + 0.5) / self.size

    @property
    def minimum(self) -> float:
        return float(np.min(self.values))

    def value_near(self, theta: float) -> float:
        """Sample closest to theta."""
        return float(self.values[int(np.argmin(np.abs(self.theta - theta)))])


class CepstrumResult(BaseModel):
    """Outer-function coefficients of a sampled density."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    log_coeffs: np.ndarray
    c: CoefficientSequence
    a: CoefficientSequence
    residual: float

    @field_validator("log_coeffs", mode="before")
    @classmethod
    def freeze_log_coeffs(cls, value: Any) -> np.ndarray:
        arr = np.array(value, dtype=np.float64)
        arr.flags.writeable = False
        return arr

    @property
    def c0_sq(self) -> float:
        """Innovation variance exp(L_0), the Szego-Kolmogorov limit."""
        return float(self.c.values[0] ** 2)


class BaxterReport(BaseModel):
    """Numeric check of sum |gamma_n| < inf and min Delta > 0."""

    model_config = ConfigDict(frozen=True)

    abs_sum: float
    growth_ratio: float
    summable: bool
    density_min: float
    satisfied: bool
