"""
PACFLab Coefficient Generators

Closed-form MA(inf), AR(inf), psi/phi and autocovariance sequences
for ARMA and fractional ARIMA models.
"""

import math

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict
from scipy import signal, special

from pacflab.coeffs.models import (
    CoefficientSequence,
    DecayClass,
    DecayKind,
    FarimaSpec,
    SequenceKind,
)
from pacflab.core.errors import DomainError, LengthError, TruncationError
from pacflab.core.logging import PacfEvents, get_logger
from pacflab.core.series import (
    binomial_series,
    geometric_length,
    power_tail_integral,
    rational_filter,
)

logger = get_logger(__name__)
events = PacfEvents()

MAX_INDEX = 2**31 - 2


def _check_length(n_max: int) -> None:
    if n_max < 0 or n_max > MAX_INDEX:
        raise LengthError(f"n_max={n_max} outside the index range", n_max=n_max)


def _ma_values(spec: FarimaSpec, n_max: int) -> NDArray[np.float64]:
    return rational_filter(spec.theta, spec.phi, binomial_series(spec.d, n_max))


def _ar_values(spec: FarimaSpec, n_max: int) -> NDArray[np.float64]:
    return rational_filter(spec.phi, spec.theta, -binomial_series(-spec.d, n_max))


def farima_ma_coeffs(spec: FarimaSpec, n_max: int) -> CoefficientSequence:
    """MA coefficients c_0..c_n_max of Theta(z)/Phi(z) (1 - z)^(-d)."""
    _check_length(n_max)
    if spec.d != 0.0:
        decay = DecayClass.power_law(1.0 - spec.d)
    else:
        decay = DecayClass.exponential(spec.ar_rate())
    sequence = CoefficientSequence(
        values=_ma_values(spec, n_max),
        kind=SequenceKind.MA,
        decay=decay,
        generator=lambda m: _ma_values(spec, m),
    )
    events.series_computed("ma", len(sequence), d=spec.d)
    return sequence


def farima_ar_coeffs(spec: FarimaSpec, n_max: int) -> CoefficientSequence:
    """AR coefficients a_0..a_n_max of -Phi(z)/Theta(z) (1 - z)^d, a_0 = -1."""
    _check_length(n_max)
    if spec.d != 0.0:
        decay = DecayClass.power_law(1.0 + spec.d)
    else:
        decay = DecayClass.exponential(spec.ma_rate())
    sequence = CoefficientSequence(
        values=_ar_values(spec, n_max),
        kind=SequenceKind.AR,
        decay=decay,
        generator=lambda m: _ar_values(spec, m),
    )
    events.series_computed("ar", len(sequence), d=spec.d)
    return sequence


def psi_phi_coeffs(
    spec: FarimaSpec,
    n_max: int,
) -> tuple[CoefficientSequence, CoefficientSequence]:
    """
    The psi and phi sequences of a model with -1/2 < d < 0.

    Since (1 - z)^(-d) vanishes at z = 1 for d < 0, sum_k c_k = 0 and
    psi_n = -sum_{k>n} c_k = sum_{k<=n} c_k. Both sequences are generated from
    their generating functions
        psi(z) = C(z)/(1 - z)     = Theta/Phi (1 - z)^(-(1 + d))
        phi(z) = (z - 1) A(z)     = Phi/Theta (1 - z)^(1 + d)
    so that phi_0 = -a_0 = 1 and phi_n = a_{n-1} - a_n.
    """
    if not spec.d < 0.0:
        raise DomainError(f"psi/phi sequences require d < 0, got d={spec.d}", d=spec.d)
    _check_length(n_max)
    q = 1.0 + spec.d

    def psi_values(m: int) -> NDArray[np.float64]:
        return rational_filter(spec.theta, spec.phi, binomial_series(q, m))

    def phi_values(m: int) -> NDArray[np.float64]:
        return rational_filter(spec.phi, spec.theta, binomial_series(-q, m))

    psi = CoefficientSequence(
        values=psi_values(n_max),
        kind=SequenceKind.PSI,
        decay=DecayClass.power_law(-spec.d),
        generator=psi_values,
    )
    phi = CoefficientSequence(
        values=phi_values(n_max),
        kind=SequenceKind.PHI,
        decay=DecayClass.power_law(2.0 + spec.d),
        generator=phi_values,
    )
    events.series_computed("psi_phi", n_max + 1, d=spec.d)
    return psi, phi


def _lagged_products(
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    length: int,
    n_max: int,
) -> NDArray[np.float64]:
    """sum_{v=0}^{length-1} x_v y_{v+n} for n = 0..n_max."""
    return signal.fftconvolve(y[: length + n_max], x[:length][::-1], mode="valid")


def autocov_from_ma(
    c: CoefficientSequence,
    n_max: int,
    tail_len: int,
) -> CoefficientSequence:
    """
    Autocovariance gamma_n = sum_v c_v c_{n+v} for n = 0..n_max.

    The sum runs over v <= tail_len. For power-law MA coefficients the dropped
    tail is replaced by the integral of the locally matched power law, and the
    change of the corrected sum between tail_len/2 and tail_len is reported
    as tail_bound.
    """
    _check_length(n_max)
    if c.kind != SequenceKind.MA:
        raise DomainError("autocovariance requires an MA sequence", kind=c.kind.value)
    tail_len = max(int(tail_len), 2)
    values = c.head(n_max + tail_len)
    n = np.arange(n_max + 1, dtype=np.float64)

    def corrected(length: int) -> NDArray[np.float64]:
        partial = _lagged_products(values, values, length, n_max)
        if c.decay.kind != DecayKind.POWER_LAW:
            return partial
        p = float(c.decay.exponent)
        last = length - 1
        scale_v = values[last] * last**p
        scale_w = values[last + n.astype(int)] * (last + n) ** p
        return partial + scale_v * scale_w * power_tail_integral(p, p, n, last + 0.5)

    full = corrected(tail_len + 1)
    half = corrected(tail_len // 2 + 1)
    if c.decay.kind == DecayKind.EXPONENTIAL:
        rate = float(c.decay.rate or 0.0)
        scale = abs(values[tail_len]) * float(np.max(np.abs(values)))
        bound = np.full(n_max + 1, scale * rate / (1.0 - rate))
    else:
        bound = np.abs(full - half)
    if c.decay.kind == DecayKind.UNKNOWN and np.max(bound) > 1e-8 * abs(full[0]):
        raise TruncationError(
            "autocovariance sum did not settle for a sequence of unknown decay",
            tail_bound=float(np.max(bound)),
        )

    if c.decay.kind == DecayKind.POWER_LAW:
        decay = DecayClass.power_law(2.0 * float(c.decay.exponent) - 1.0)
    else:
        decay = c.decay
    return CoefficientSequence(
        values=full,
        kind=SequenceKind.AUTOCOV,
        decay=decay,
        tail_bound=bound,
    )


def impulse_response(
    numerator: tuple[float, ...],
    denominator: tuple[float, ...],
    rate: float,
) -> NDArray[np.float64]:
    length = geometric_length(rate) + len(numerator)
    impulse = np.zeros(length)
    impulse[0] = 1.0
    return rational_filter(numerator, denominator, impulse)


def farima_autocov(spec: FarimaSpec, n_max: int) -> CoefficientSequence:
    """
    Exact autocovariance of a FARIMA(p, d, q) model with unit innovation variance.

    The fractional part has gamma'_0 = Gamma(1 - 2d)/Gamma(1 - d)^2 and
    gamma'_n = gamma'_{n-1} (n - 1 + d)/(n - d). The rational part enters through
    the autocorrelation h_k of the impulse response of Theta/Phi:
    gamma_n = sum_k h_k gamma'_{|n + k|}.
    """
    _check_length(n_max)
    r = impulse_response(spec.theta, spec.phi, spec.ar_rate())
    h = np.correlate(r, r, mode="full")  # h[j] pairs with lag j - (len(r) - 1)
    width = len(r) - 1

    d = spec.d
    m = n_max + width
    k = np.arange(1, m + 1, dtype=np.float64)
    base0 = special.gamma(1.0 - 2.0 * d) / special.gamma(1.0 - d) ** 2
    base = base0 * np.concatenate(([1.0], np.cumprod((k - 1.0 + d) / (k - d))))

    lags = np.arange(n_max + 1)[:, None] + (np.arange(2 * width + 1) - width)[None, :]
    values = base[np.abs(lags)] @ h

    if d != 0.0:
        decay = DecayClass.power_law(1.0 - 2.0 * d)
    else:
        decay = DecayClass.exponential(spec.ar_rate())
    events.series_computed("autocov", n_max + 1, d=d, closed_form=True)
    return CoefficientSequence(
        values=values,
        kind=SequenceKind.AUTOCOV,
        decay=decay,
        generator=lambda m: farima_autocov(spec, m).values,
    )


def convolution_residual(c: CoefficientSequence, a: CoefficientSequence, n_max: int) -> NDArray[np.float64]:
    """sum_{k<=n} c_k a_{n-k} + delta_{n0}, which vanishes for an exact pair."""
    product = np.convolve(c.head(n_max), a.head(n_max))[: n_max + 1]
    product[0] += 1.0
    return product


class FarimaAsymptotics(BaseModel):
    """Leading-order constants of the coefficient asymptotics."""

    model_config = ConfigDict(frozen=True)

    k1: float
    ma_constant: float
    ar_constant: float
    autocov_constant: float
    psi_constant: float | None = None
    phi_constant: float | None = None


def farima_asymptotic_constants(spec: FarimaSpec) -> FarimaAsymptotics:
    """
    Constants L with x_n ~ L n^(-p) for the model's sequences (d != 0).

    c_n ~ K_1/Gamma(d) n^(d-1), a_n ~ Gamma(d) d sin(pi d)/(pi K_1) n^(-1-d),
    gamma_n ~ K_1^2 Gamma(1-2d) sin(pi d)/pi n^(2d-1); for d < 0 also
    psi_n ~ K_1/Gamma(1+d) n^d and phi_n ~ 1/(K_1 Gamma(-1-d)) n^(-2-d).
    """
    d = spec.d
    if d == 0.0:
        raise DomainError("power-law asymptotics require d != 0", d=d)
    k1 = spec.k1()
    sin_term = math.sin(math.pi * d) / math.pi
    psi_constant = phi_constant = None
    if d < 0.0:
        psi_constant = k1 / special.gamma(1.0 + d)
        phi_constant = 1.0 / (k1 * special.gamma(-1.0 - d))
    return FarimaAsymptotics(
        k1=k1,
        ma_constant=k1 / special.gamma(d),
        ar_constant=special.gamma(d) * d * sin_term / k1,
        autocov_constant=k1**2 * special.gamma(1.0 - 2.0 * d) * sin_term,
        psi_constant=psi_constant,
        phi_constant=phi_constant,
    )
