"""
PACFLab Asymptotics Models

Fits, probes and reports produced by the asymptotic checks and the
verification scenarios.
"""

from datetime import datetime, timezone
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class FitKind(str, Enum):
    """Shape fitted to a sequence tail."""

    POWER = "power"
    EXPONENTIAL = "exponential"
    MEAN = "mean"


class Growth(str, Enum):
    """Growth class of a partial-sum sequence."""

    BOUNDED = "bounded"
    LOG = "log"
    POWER = "power"


class TauTable(BaseModel):
    """tau_1, tau_3, ... by the closed form and small-k tau by quadrature."""

    model_config = ConfigDict(frozen=True)

    odd_taus: list[float]
    generic_taus: dict[int, float] = Field(default_factory=dict)

    def odd(self, k: int) -> float:
        """tau_{2k-1}."""
        return self.odd_taus[k - 1]


class AsymptoticFit(BaseModel):
    """
    Tail fit over a lag window.

    power:       values ~ constant * n^exponent
    exponential: |values| ~ constant * exp(exponent * n)
    mean:        n * values ~ constant, exponent fixed at -1
    """

    model_config = ConfigDict(frozen=True)

    kind: FitKind
    exponent: float
    constant: float
    r_squared: float | None = None
    dispersion: float = 0.0
    window: tuple[int, int]
    points: int
    bound: float | None = None
    passed: bool | None = None


class RegularVariationReport(BaseModel):
    """alpha_{n_probe} of the power-law covariance model against its asymptote."""

    model_config = ConfigDict(frozen=True)

    d: float
    n_probe: int
    asymptote: str
    tolerance: float
    levinson_alpha: float
    levinson_ratio: float
    levinson_gap: float
    repr_alpha: float | None = None
    repr_ratio: float | None = None
    repr_gap: float | None = None
    repr_error: str | None = None
    factorization_residual: float | None = None
    passed: bool


class BaxterDiagnostic(BaseModel):
    """Summability of the PACF and of the autocovariance side by side."""

    model_config = ConfigDict(frozen=True)

    horizon: int
    alpha_abs_sum: float
    gamma_abs_sum: float
    alpha_growth: Growth
    gamma_growth: Growth
    alpha_ratio: float
    gamma_ratio: float

    @property
    def pacf_short_memory(self) -> bool:
        return self.alpha_growth == Growth.BOUNDED

    @property
    def covariance_short_memory(self) -> bool:
        return self.gamma_growth == Growth.BOUNDED

    @property
    def definitions_agree(self) -> bool:
        return self.pacf_short_memory == self.covariance_short_memory


class RatioProbe(BaseModel):
    """Observed ratios over a window next to their conjectured limit (never asserted)."""

    model_config = ConfigDict(frozen=True)

    name: str
    window: tuple[int, int]
    lags: list[int] = Field(default_factory=list)
    ratios: list[float] = Field(default_factory=list)
    limit: float | None = None
    skipped: bool = False

    @property
    def last_ratio(self) -> float | None:
        return self.ratios[-1] if self.ratios else None


class ScenarioResult(BaseModel):
    """Outcome of one verification scenario."""

    name: str
    passed: bool
    metrics: dict[str, Any] = Field(default_factory=dict)
    trace: list[dict[str, Any]] = Field(default_factory=list)
    error: str | None = None


class VerificationReport(BaseModel):
    """Aggregate of a verification run."""

    started_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
    results: list[ScenarioResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def summary(self) -> dict[str, Any]:
        return {
            "pass": self.passed,
            "started_at": self.started_at.isoformat(),
            "scenarios": {
                result.name: {
                    "pass": result.passed,
                    "metrics": result.metrics,
                    **({"error": result.error} if result.error else {}),
                }
                for result in self.results
            },
        }
