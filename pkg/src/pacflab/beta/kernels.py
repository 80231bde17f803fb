"""
PACFLab Beta Kernels

beta(n) = sum_v c_v a_{v+n} and beta_-(n) = sum_v psi_v phi_{v+n+1},
with adaptive tail control, plus the closed form for FARIMA models.
"""

import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict
from scipy import signal

from pacflab.beta.models import BetaExtension, BetaSequence, BetaVariant, ExtensionKind
from pacflab.coeffs.generators import impulse_response
from pacflab.coeffs.models import (
    CoefficientSequence,
    DecayClass,
    DecayKind,
    FarimaSpec,
    SequenceKind,
    TruncationPolicy,
)
from pacflab.core.errors import DomainError, TruncationError
from pacflab.core.logging import PacfEvents, get_logger
from pacflab.core.series import geometric_length, power_tail_integral

logger = get_logger(__name__)
events = PacfEvents()

START_LENGTH = 1024
MIN_MATCH_LENGTH = 16
FIT_MIN_LENGTH = 64


def _windowed_sums(
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    length: int,
    n_max: int,
    shift: int,
) -> NDArray[np.float64]:
    """sum_{v<length} x_v y_{v+n+shift} for n = 0..n_max, by direct dot products."""
    windows = sliding_window_view(y[shift : shift + n_max + length], length)
    return windows @ x[:length]


def _correlated_sums(
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    length: int,
    n_max: int,
    shift: int,
) -> NDArray[np.float64]:
    """Same sums through an FFT correlation, for long power-law sequences."""
    return signal.fftconvolve(y[shift : shift + n_max + length], x[:length][::-1], mode="valid")


def _power_tail(
    x: NDArray[np.float64],
    y: NDArray[np.float64],
    length: int,
    n: NDArray[np.float64],
    shift: int,
    p: float,
    r: float,
) -> NDArray[np.float64]:
    """Integral estimate of sum_{v>=length} x_v y_{v+n+shift} from matched power laws."""
    last = length - 1
    m = n + shift
    scale_x = x[last] * last**p
    scale_y = y[last + m.astype(np.int64)] * (last + m) ** r
    return scale_x * scale_y * power_tail_integral(p, r, m, last + 0.5)


def _sum_exponential(
    x: CoefficientSequence,
    y: CoefficientSequence,
    n_max: int,
    shift: int,
    policy: TruncationPolicy,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    rate = float(x.decay.rate or 0.0) * float(y.decay.rate or 0.0)
    if x.decay.kind != DecayKind.EXPONENTIAL:
        rate = float(y.decay.rate or 0.0)
    elif y.decay.kind != DecayKind.EXPONENTIAL:
        rate = float(x.decay.rate or 0.0)
    length = geometric_length(rate, cap=policy.inner_len)
    xs = x.head(length)
    ys = y.head(length + n_max + shift)
    values = _windowed_sums(xs, ys, length, n_max, shift)
    if rate > 0.0:
        last = np.abs(xs[length - 1] * ys[length - 1 + shift : length + shift + n_max])
        bound = last * rate / (1.0 - rate)
    else:
        bound = np.zeros(n_max + 1)
    return values, bound


def _sum_adaptive(
    x: CoefficientSequence,
    y: CoefficientSequence,
    n_max: int,
    shift: int,
    policy: TruncationPolicy,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    power_law = (
        x.decay.kind == DecayKind.POWER_LAW and y.decay.kind == DecayKind.POWER_LAW
    )
    p = float(x.decay.exponent) if power_law else 0.0
    r = float(y.decay.exponent) if power_law else 0.0
    n = np.arange(n_max + 1, dtype=np.float64)

    def estimate(xs: NDArray[np.float64], ys: NDArray[np.float64], length: int) -> NDArray[np.float64]:
        partial = _correlated_sums(xs, ys, length, n_max, shift)
        if power_law and length >= MIN_MATCH_LENGTH:
            partial = partial + _power_tail(xs, ys, length, n, shift, p, r)
        return partial

    length = min(START_LENGTH, policy.inner_len)
    if length < MIN_MATCH_LENGTH:
        xs = x.head(length)
        ys = y.head(length + n_max + shift)
        values = _windowed_sums(xs, ys, length, n_max, shift)
        return values, np.full(n_max + 1, np.inf)

    values = np.zeros(n_max + 1)
    bound = np.full(n_max + 1, np.inf)
    pending = np.ones(n_max + 1, dtype=bool)
    previous: NDArray[np.float64] | None = None
    while True:
        xs = x.head(length)
        ys = y.head(length + n_max + shift)
        if previous is None:
            previous = estimate(xs, ys, length // 2)
        current = estimate(xs, ys, length)
        change = np.abs(current - previous)
        values[pending] = current[pending]
        bound[pending] = change[pending]
        pending &= change >= policy.abs_tol / 2.0
        if not pending.any() or length >= policy.inner_len:
            break
        previous = current
        length = min(2 * length, policy.inner_len)

    if pending.any():
        worst = float(np.max(bound[pending]))
        if x.decay.kind == DecayKind.UNKNOWN or y.decay.kind == DecayKind.UNKNOWN:
            raise TruncationError(
                f"beta sums did not converge by inner_len={policy.inner_len}",
                tail_bound=worst,
                unconverged=int(pending.sum()),
            )
        logger.warning(
            "beta_tail_above_tolerance",
            inner_len=policy.inner_len,
            tail_bound=worst,
            unconverged=int(pending.sum()),
        )
    return values, bound


def _kernel_sums(
    x: CoefficientSequence,
    y: CoefficientSequence,
    n_max: int,
    shift: int,
    policy: TruncationPolicy,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    if DecayKind.EXPONENTIAL in (x.decay.kind, y.decay.kind):
        return _sum_exponential(x, y, n_max, shift, policy)
    return _sum_adaptive(x, y, n_max, shift, policy)


def fit_extension(values: NDArray[np.float64]) -> BetaExtension:
    """Power law through beta(L/2) and beta(L), L the last table index."""
    last = len(values) - 1
    if last < FIT_MIN_LENGTH:
        return BetaExtension()
    far, near = values[last], values[last // 2]
    if far == 0.0 or near == 0.0 or np.sign(far) != np.sign(near):
        logger.warning("beta_extension_unavailable", last=last)
        return BetaExtension()
    exponent = math.log(abs(near / far)) / math.log(last / (last // 2))
    return BetaExtension(
        kind=ExtensionKind.POWER_LAW,
        amplitude=float(far),
        exponent=exponent,
        anchor=float(last),
    )


def _beta_decay(x: CoefficientSequence, y: CoefficientSequence) -> DecayClass:
    if x.decay.kind == DecayKind.POWER_LAW and y.decay.kind == DecayKind.POWER_LAW:
        return DecayClass.power_law(float(x.decay.exponent) + float(y.decay.exponent) - 1.0)
    if DecayKind.EXPONENTIAL in (x.decay.kind, y.decay.kind):
        return DecayClass.exponential(
            max(float(x.decay.rate or 0.0), float(y.decay.rate or 0.0))
        )
    return DecayClass.unknown()


def _build(
    x: CoefficientSequence,
    y: CoefficientSequence,
    n_max: int,
    shift: int,
    variant: BetaVariant,
    policy: TruncationPolicy,
    extension: BetaExtension | None,
) -> BetaSequence:
    values, bound = _kernel_sums(x, y, n_max, shift, policy)
    decay = _beta_decay(x, y)
    if extension is None:
        extension = fit_extension(values) if decay.kind == DecayKind.POWER_LAW else BetaExtension()
    sequence = BetaSequence(
        values=values,
        variant=variant,
        tail_bound=bound,
        abs_tol=policy.abs_tol,
        decay=decay,
        extension=extension,
    )
    events.beta_computed(
        variant.value,
        n_max,
        float(np.max(bound)),
        extension=extension.kind.value,
    )
    return sequence


def beta_standard(
    c: CoefficientSequence,
    a: CoefficientSequence,
    n_max: int,
    policy: TruncationPolicy,
    extension: BetaExtension | None = None,
) -> BetaSequence:
    """
    beta(n) = sum_v c_v a_{v+n} for n = 0..n_max.

    Exponentially decaying inputs are summed to a fixed length set by their
    geometric rate. Power-law inputs double V from 1024 until the integral-
    corrected sums at V and V/2 differ by less than abs_tol/2 (the reported
    tail_bound). Without an explicit extension, power-law kernels get a
    fitted power-law continuation.
    """
    if c.kind != SequenceKind.MA or a.kind != SequenceKind.AR:
        raise DomainError("beta_standard expects MA and AR sequences")
    return _build(c, a, n_max, 0, BetaVariant.STANDARD, policy, extension)


def beta_minus(
    psi: CoefficientSequence,
    phi: CoefficientSequence,
    n_max: int,
    policy: TruncationPolicy,
    extension: BetaExtension | None = None,
) -> BetaSequence:
    """beta_-(n) = sum_v psi_v phi_{v+n+1} for n = 0..n_max."""
    if psi.kind != SequenceKind.PSI or phi.kind != SequenceKind.PHI:
        raise DomainError("beta_minus expects psi and phi sequences")
    return _build(psi, phi, n_max, 1, BetaVariant.MINUS, policy, extension)


def _closed_form_weights(spec: FarimaSpec) -> tuple[NDArray[np.float64], NDArray[np.int64]]:
    """g_k = sum_j r_{j+k} t_j, r and t the impulse responses of Theta/Phi and Phi/Theta."""
    r = impulse_response(spec.theta, spec.phi, spec.ar_rate())
    t = impulse_response(spec.phi, spec.theta, spec.ma_rate())
    g = np.correlate(r, t, mode="full")
    offsets = np.arange(len(g)) - (len(t) - 1)
    keep = np.abs(g) > 1e-17 * np.max(np.abs(g))
    return g[keep], offsets[keep]


def farima_extension(spec: FarimaSpec) -> BetaExtension:
    """
    Exact continuation of beta for a FARIMA model with d != 0.

    beta(x) = (sin(pi d)/pi) sum_k g_k / (x + k - d) with sum_k g_k = 1. It
    agrees with beta at every integer and also with beta_-.
    """
    if spec.d == 0.0:
        return BetaExtension()
    weights, offsets = _closed_form_weights(spec)
    return BetaExtension(
        kind=ExtensionKind.CLOSED_FORM,
        d=spec.d,
        weights=tuple(float(w) for w in weights),
        offsets=tuple(int(k) for k in offsets),
    )


def farima_beta(spec: FarimaSpec, x: ArrayLike) -> NDArray[np.float64]:
    """Closed-form beta at x; for d = 0 only integer x, where beta(n) = -g_{-n}."""
    if spec.d != 0.0:
        return farima_extension(spec)(x)
    weights, offsets = _closed_form_weights(spec)
    lookup = dict(zip(offsets.tolist(), weights.tolist(), strict=True))
    x_arr = np.asarray(x, dtype=np.int64)
    return np.vectorize(lambda n: -lookup.get(-int(n), 0.0), otypes=[np.float64])(x_arr)


class O1nReport(BaseModel):
    """sup_n n sum_v |c_v a_{n+v}| over the computed lags."""

    model_config = ConfigDict(frozen=True)

    supremum: float
    argmax: int
    last_value: float
    finite: bool


def o1n_diagnostic(
    c: CoefficientSequence,
    a: CoefficientSequence,
    n_max: int,
    policy: TruncationPolicy,
) -> O1nReport:
    """Numeric check of the condition sum_v |c_v a_{n+v}| = O(1/n)."""

    def absolute(seq: CoefficientSequence) -> CoefficientSequence:
        generator = seq.generator
        return seq.model_copy(
            update={
                "values": seq.freeze_array(np.abs(seq.values)),
                "generator": (lambda m: np.abs(generator(m))) if generator else None,
            }
        )

    values, _ = _kernel_sums(absolute(c), absolute(a), n_max, 0, policy)
    scaled = np.arange(n_max + 1) * values
    argmax = int(np.argmax(scaled))
    return O1nReport(
        supremum=float(scaled[argmax]),
        argmax=argmax,
        last_value=float(scaled[-1]),
        finite=bool(np.all(np.isfinite(scaled))),
    )
