"""
PACFLab Representation Models

PACF series produced by either evaluation method, and the
per-lag comparison between them.
"""

from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class PacfMethod(str, Enum):
    """How a PACF series was computed."""

    REPRESENTATION = "repr"
    LEVINSON = "levinson"


class PacfSeries(BaseModel):
    """
    alpha_n with diagnostics for the lags in `lags`.

    u and v are U_n and V_n divided by c_0^2, so v tends to 1. depth_used is
    the outer-series depth for the representation and the recursion order for
    Levinson; trunc_err is the estimated absolute error of alpha_n.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    method: PacfMethod
    lags: np.ndarray
    alpha: np.ndarray
    u: np.ndarray
    v: np.ndarray
    depth_used: np.ndarray
    trunc_err: np.ndarray

    @field_validator("lags", "depth_used", mode="before")
    @classmethod
    def freeze_int_array(cls, value: Any) -> np.ndarray:
        arr = np.array(value, dtype=np.int64)
        arr.flags.writeable = False
        return arr

    @field_validator("alpha", "u", "v", "trunc_err", mode="before")
    @classmethod
    def freeze_float_array(cls, value: Any) -> np.ndarray:
        arr = np.array(value, dtype=np.float64)
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def check_shapes(self) -> "PacfSeries":
        size = len(self.lags)
        for name in ("alpha", "u", "v", "depth_used", "trunc_err"):
            if len(getattr(self, name)) != size:
                raise ValueError(f"{name} has {len(getattr(self, name))} entries, expected {size}")
        if size and np.any(np.diff(self.lags) <= 0):
            raise ValueError("lags must be strictly increasing")
        return self

    def __len__(self) -> int:
        return len(self.lags)

    @property
    def n_max(self) -> int:
        return int(self.lags[-1]) if len(self.lags) else 0

    def window(self, low: int, high: int) -> np.ndarray:
        """Boolean mask of the lags in [low, high]."""
        return (self.lags >= low) & (self.lags <= high)

    def at(self, lag: int) -> float:
        index = np.searchsorted(self.lags, lag)
        if index >= len(self.lags) or self.lags[index] != lag:
            raise KeyError(f"lag {lag} was not computed")
        return float(self.alpha[index])

    def records(self) -> list[dict[str, Any]]:
        return [
            {
                "n": int(n),
                "alpha": float(a),
                "u": float(u),
                "v": float(v),
                "depth_used": int(k),
                "trunc_err": float(e),
            }
            for n, a, u, v, k, e in zip(
                self.lags,
                self.alpha,
                self.u,
                self.v,
                self.depth_used,
                self.trunc_err,
                strict=True,
            )
        ]


class ComparisonRow(BaseModel):
    """One lag of a representation/Levinson comparison."""

    model_config = ConfigDict(frozen=True)

    n: int
    alpha_repr: float
    alpha_levinson: float
    abs_diff: float
    tolerance: float
    passed: bool


class ComparisonTable(BaseModel):
    """Per-lag verdicts of the two PACF methods."""

    model_config = ConfigDict(frozen=True)

    rows: list[ComparisonRow]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def max_abs_diff(self) -> float:
        return max((row.abs_diff for row in self.rows), default=0.0)
