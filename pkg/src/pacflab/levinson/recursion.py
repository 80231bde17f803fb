"""
PACFLab Levinson Recursion

Durbin-Levinson reflection coefficients of an autocovariance sequence,
the independent PACF oracle, and the finite-past error ratio delta(n).
"""

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, field_validator

from pacflab.coeffs.models import CoefficientSequence, SequenceKind
from pacflab.core.errors import DomainError, NotPositiveDefiniteError
from pacflab.core.logging import PacfEvents, get_logger
from pacflab.core.series import compensated_dot
from pacflab.representation.models import PacfMethod, PacfSeries

logger = get_logger(__name__)
events = PacfEvents()

COMPENSATED_ORDER = 1000


class LevinsonState(BaseModel):
    """Predictor of the current order with the history of the recursion."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    order: int
    coeffs: np.ndarray
    var: np.ndarray
    alphas: np.ndarray

    @field_validator("coeffs", "var", "alphas", mode="before")
    @classmethod
    def freeze_array(cls, value: object) -> np.ndarray:
        arr = np.array(value, dtype=np.float64)
        arr.flags.writeable = False
        return arr

    @property
    def prediction_variance(self) -> float:
        return float(self.var[-1])


def _check_gamma(gamma: CoefficientSequence) -> None:
    if gamma.kind != SequenceKind.AUTOCOV:
        raise DomainError("Levinson recursion requires an autocovariance sequence", kind=gamma.kind.value)


def levinson_durbin(gamma: NDArray[np.float64], order: int) -> LevinsonState:
    """
    Run the recursion on gamma_0..gamma_order.

    var[n] is the prediction variance v_n from n past values, var[0] = gamma_0.
    """
    if len(gamma) < order + 1:
        raise DomainError(f"recursion to order {order} needs {order + 1} autocovariances", available=len(gamma))
    coeffs = np.zeros(order + 1)
    var = np.empty(order + 1)
    alphas = np.empty(order)
    var[0] = gamma[0]
    for n in range(1, order + 1):
        history = gamma[n - 1 : 0 : -1]
        if n > COMPENSATED_ORDER:
            projection = compensated_dot(coeffs[1:n], history)
        else:
            projection = float(np.dot(coeffs[1:n], history))
        alpha = (gamma[n] - projection) / var[n - 1]
        coeffs[1:n] = coeffs[1:n] - alpha * coeffs[n - 1 : 0 : -1]
        coeffs[n] = alpha
        var[n] = var[n - 1] * (1.0 - alpha * alpha)
        alphas[n - 1] = alpha
        if not var[n] > 0.0 or not abs(alpha) < 1.0:
            raise NotPositiveDefiniteError(
                f"prediction variance is not positive at order {n}",
                order=n,
                variance=float(var[n]),
            )
    return LevinsonState(order=order, coeffs=coeffs[1:], var=var, alphas=alphas)


def pacf_via_levinson(
    gamma: CoefficientSequence,
    n_max: int,
    c0_sq: float = 1.0,
) -> PacfSeries:
    """
    PACF alpha_1..alpha_n_max as reflection coefficients of the recursion.

    V_n = v_{n-1}/c0_sq and U_n = alpha_n V_n; trunc_err propagates the
    autocovariance tail bounds through 1/v_{n-1}.
    """
    _check_gamma(gamma)
    values = gamma.head(n_max)
    state = levinson_durbin(values, n_max)
    v = state.var[:-1] / c0_sq
    if gamma.tail_bound is not None:
        bound = np.cumsum(gamma.tail_bound[: n_max + 1])[1:] / state.var[:-1]
    else:
        bound = np.zeros(n_max)
    series = PacfSeries(
        method=PacfMethod.LEVINSON,
        lags=np.arange(1, n_max + 1),
        alpha=state.alphas,
        u=state.alphas * v,
        v=v,
        depth_used=np.arange(1, n_max + 1),
        trunc_err=bound,
    )
    events.series_computed("pacf_levinson", n_max, final_variance=state.prediction_variance)
    return series


def delta_ratio(gamma: CoefficientSequence, c0_sq: float, n_max: int) -> NDArray[np.float64]:
    """delta(n) = (v_{n+1} - c0_sq)/c0_sq for n = 1..n_max (n + 1 past values)."""
    _check_gamma(gamma)
    if not c0_sq > 0.0:
        raise DomainError("innovation variance must be positive", c0_sq=c0_sq)
    state = levinson_durbin(gamma.head(n_max + 1), n_max + 1)
    return (state.var[2:] - c0_sq) / c0_sq
