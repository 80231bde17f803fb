"""
PACFLab Coefficient Models

Model specifications, truncation policies and coefficient sequences.
"""

from collections.abc import Callable
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from pacflab.core.config import get_settings
from pacflab.core.errors import LengthError

ROOT_TOLERANCE = 1e-8
COMMON_ROOT_TOLERANCE = 1e-6
CONSTANT_TERM_TOLERANCE = 1e-12


class SequenceKind(str, Enum):
    """What a coefficient sequence represents."""

    MA = "ma"
    AR = "ar"
    PSI = "psi"
    PHI = "phi"
    BETA = "beta"
    AUTOCOV = "autocov"


class DecayKind(str, Enum):
    """Asymptotic decay classes of a sequence."""

    EXPONENTIAL = "exponential"
    POWER_LAW = "power_law"
    UNKNOWN = "unknown"


class DecayClass(BaseModel):
    """
    Declared decay of a sequence.

    For power_law the exponent p means |x_n| ~ n^(-p). For exponential the
    rate r bounds |x_n| by a multiple of r^n (0 for finite sequences).
    """

    model_config = ConfigDict(frozen=True)

    kind: DecayKind
    exponent: float | None = None
    rate: float | None = None

    @classmethod
    def power_law(cls, exponent: float) -> "DecayClass":
        return cls(kind=DecayKind.POWER_LAW, exponent=exponent)

    @classmethod
    def exponential(cls, rate: float) -> "DecayClass":
        return cls(kind=DecayKind.EXPONENTIAL, rate=rate)

    @classmethod
    def unknown(cls) -> "DecayClass":
        return cls(kind=DecayKind.UNKNOWN)


def _polynomial_roots(coeffs: tuple[float, ...]) -> NDArray[np.complex128]:
    """Zeros of sum coeffs[k] z^k via companion-matrix eigenvalues."""
    if len(coeffs) <= 1:
        return np.zeros(0, dtype=np.complex128)
    return np.roots(coeffs[::-1]).astype(np.complex128)


class FarimaSpec(BaseModel):
    """
    Fractional ARIMA(p, d, q) model.

    Polynomials are given in ascending powers with constant term 1. Phi and
    Theta must have no zeros in the closed unit disk and no common zeros.
    """

    model_config = ConfigDict(frozen=True)

    d: float = Field(default=0.0, gt=-0.5, lt=0.5)
    phi: tuple[float, ...] = Field(default=(1.0,))
    theta: tuple[float, ...] = Field(default=(1.0,))

    @field_validator("phi", "theta", mode="before")
    @classmethod
    def check_polynomial(cls, value: Any) -> tuple[float, ...]:
        coeffs = [float(x) for x in (value if value is not None else [1.0])]
        while len(coeffs) > 1 and coeffs[-1] == 0.0:
            coeffs.pop()
        if not all(np.isfinite(coeffs)):
            raise ValueError("polynomial coefficients must be finite")
        if not coeffs or abs(coeffs[0] - 1.0) > CONSTANT_TERM_TOLERANCE:
            raise ValueError(f"polynomial constant term must be 1, got {coeffs[0] if coeffs else None}")
        return (1.0, *coeffs[1:])

    @model_validator(mode="after")
    def check_roots(self) -> "FarimaSpec":
        phi_roots = _polynomial_roots(self.phi)
        theta_roots = _polynomial_roots(self.theta)
        for name, roots in (("phi", phi_roots), ("theta", theta_roots)):
            if roots.size and np.min(np.abs(roots)) - 1.0 <= ROOT_TOLERANCE:
                raise ValueError(f"{name} has a zero in the closed unit disk")
        if phi_roots.size and theta_roots.size:
            gaps = np.abs(phi_roots[:, None] - theta_roots[None, :])
            if np.min(gaps) < COMMON_ROOT_TOLERANCE:
                raise ValueError("phi and theta share a common root")
        return self

    @property
    def p(self) -> int:
        return len(self.phi) - 1

    @property
    def q(self) -> int:
        return len(self.theta) - 1

    @property
    def is_white_noise(self) -> bool:
        return self.d == 0.0 and self.p == 0 and self.q == 0

    def phi_roots(self) -> NDArray[np.complex128]:
        return _polynomial_roots(self.phi)

    def theta_roots(self) -> NDArray[np.complex128]:
        return _polynomial_roots(self.theta)

    def ar_rate(self) -> float:
        """Geometric rate of the rational part of the MA coefficients."""
        roots = self.phi_roots()
        return float(np.max(1.0 / np.abs(roots))) if roots.size else 0.0

    def ma_rate(self) -> float:
        """R = max 1/|u_i| over the zeros u_i of Theta (0 when q = 0)."""
        roots = self.theta_roots()
        return float(np.max(1.0 / np.abs(roots))) if roots.size else 0.0

    def k1(self) -> float:
        """K_1 = Theta(1)/Phi(1) under the unit constant-term convention."""
        return float(sum(self.theta) / sum(self.phi))

    def describe(self) -> dict[str, Any]:
        return {"d": self.d, "phi": list(self.phi), "theta": list(self.theta)}


class TruncationPolicy(BaseModel):
    """Cutoffs and tolerance targets governing all infinite sums."""

    model_config = ConfigDict(frozen=True)

    inner_len: int = Field(ge=1)
    mid_len: int = Field(ge=1)
    outer_depth: int = Field(ge=1)
    abs_tol: float = Field(gt=0.0)
    tail_span: float = Field(default=40.0, ge=0.0)
    tail_span_max: float = Field(default=320.0, ge=0.0)
    tail_nodes: int = Field(default=6, ge=1, le=32)

    @classmethod
    def from_settings(cls, **overrides: Any) -> "TruncationPolicy":
        """Build the default policy, overriding any field given explicitly."""
        values = get_settings().truncation.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


SequenceGenerator = Callable[[int], NDArray[np.float64]]


class CoefficientSequence(BaseModel):
    """
    Real coefficients x_0, x_1, ... with a declared decay class.

    Values are read-only. A sequence built with a generator can be extended
    to a longer one with `extend`, which returns a new sequence.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    kind: SequenceKind
    decay: DecayClass = Field(default_factory=DecayClass.unknown)
    tail_bound: np.ndarray | None = None
    generator: SequenceGenerator | None = Field(default=None, exclude=True, repr=False)

    @field_validator("values", "tail_bound", mode="before")
    @classmethod
    def freeze_array(cls, value: Any) -> np.ndarray | None:
        if value is None:
            return None
        arr = np.array(value, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("coefficient sequences are one-dimensional")
        arr.flags.writeable = False
        return arr

    @model_validator(mode="after")
    def check_autocov(self) -> "CoefficientSequence":
        if self.kind == SequenceKind.AUTOCOV and len(self.values):
            gamma0 = self.values[0]
            if not gamma0 > 0.0:
                raise ValueError("autocovariance must have gamma_0 > 0")
            if np.any(np.abs(self.values) > gamma0 * (1.0 + 1e-12)):
                raise ValueError("autocovariance must satisfy |gamma_n| <= gamma_0")
        return self

    def __len__(self) -> int:
        return len(self.values)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def extend(self, n_max: int) -> "CoefficientSequence":
        """Return a sequence covering indices 0..n_max."""
        if n_max <= self.n_max:
            return self
        if self.generator is None:
            raise LengthError(
                f"{self.kind.value} sequence has {len(self)} terms, {n_max + 1} required",
                available=len(self),
                required=n_max + 1,
            )
        return self.model_copy(update={"values": self.freeze_array(self.generator(n_max))})

    def head(self, n_max: int) -> np.ndarray:
        """Values 0..n_max, extending on demand."""
        return self.extend(n_max).values[: n_max + 1]
