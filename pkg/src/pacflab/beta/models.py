"""
PACFLab Beta Models

The beta kernel sequence and its continuation to real arguments.
"""

import math
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator

from pacflab.coeffs.models import DecayClass


class BetaVariant(str, Enum):
    """Which kernel a BetaSequence holds."""

    STANDARD = "standard"
    MINUS = "minus"


class ExtensionKind(str, Enum):
    """How beta is continued beyond its table."""

    CLOSED_FORM = "closed_form"
    POWER_LAW = "power_law"
    NONE = "none"


class BetaExtension(BaseModel):
    """
    beta(x) at real arguments x, used where the m-sums leave the table.

    closed_form: (sin(pi d)/pi) sum_k weights_k / (x + offsets_k - d)
    power_law:   amplitude (x / anchor)^(-exponent)
    none:        identically zero (exponentially decaying kernels)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: ExtensionKind = ExtensionKind.NONE
    d: float = 0.0
    weights: tuple[float, ...] = ()
    offsets: tuple[int, ...] = ()
    amplitude: float = 0.0
    exponent: float = 0.0
    anchor: float = 1.0

    def __call__(self, x: ArrayLike) -> NDArray[np.float64]:
        x_arr = np.asarray(x, dtype=np.float64)
        if self.kind == ExtensionKind.CLOSED_FORM:
            out = np.zeros_like(x_arr)
            for weight, offset in zip(self.weights, self.offsets, strict=True):
                out += weight / (x_arr + (offset - self.d))
            return out * (math.sin(math.pi * self.d) / math.pi)
        if self.kind == ExtensionKind.POWER_LAW:
            return self.amplitude * (x_arr / self.anchor) ** (-self.exponent)
        return np.zeros_like(x_arr)

    @property
    def is_zero(self) -> bool:
        return self.kind == ExtensionKind.NONE

    def describe(self) -> dict[str, Any]:
        info: dict[str, Any] = {"kind": self.kind.value}
        if self.kind == ExtensionKind.CLOSED_FORM:
            info.update(d=self.d, terms=len(self.weights))
        elif self.kind == ExtensionKind.POWER_LAW:
            info.update(amplitude=self.amplitude, exponent=self.exponent, anchor=self.anchor)
        return info


class BetaSequence(BaseModel):
    """beta(0..n_max) with per-entry truncation bounds."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    variant: BetaVariant
    tail_bound: np.ndarray
    abs_tol: float
    decay: DecayClass = Field(default_factory=DecayClass.unknown)
    extension: BetaExtension = Field(default_factory=BetaExtension)

    @field_validator("values", "tail_bound", mode="before")
    @classmethod
    def freeze_array(cls, value: Any) -> np.ndarray:
        arr = np.array(value, dtype=np.float64)
        arr.flags.writeable = False
        return arr

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    @property
    def within_tolerance(self) -> bool:
        return bool(np.all(self.tail_bound <= self.abs_tol))

    def at(self, x: ArrayLike) -> NDArray[np.float64]:
        """Table values at integer x <= n_max, continuation elsewhere."""
        x_arr = np.asarray(x, dtype=np.float64)
        out = self.extension(x_arr)
        index = np.rint(x_arr)
        in_table = (index == x_arr) & (x_arr >= 0) & (x_arr <= self.n_max)
        out[in_table] = self.values[index[in_table].astype(np.int64)]
        return out
