"""
PACFLab Asymptotic Fits

Tail fits of PACF and autocovariance sequences and the probes comparing
them with conjectured limits.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from pacflab.asymptotics.models import (
    AsymptoticFit,
    BaxterDiagnostic,
    FitKind,
    Growth,
    RatioProbe,
)
from pacflab.beta.models import BetaSequence
from pacflab.coeffs.models import CoefficientSequence
from pacflab.core.config import get_settings
from pacflab.core.errors import AccuracyError, DomainError
from pacflab.core.logging import get_logger
from pacflab.representation.models import PacfSeries

logger = get_logger(__name__)

MIN_WINDOW = 10
NEGLIGIBLE = 1e-12


def _check_window(window: tuple[int, int]) -> None:
    low, high = window
    if high - low + 1 < MIN_WINDOW:
        raise DomainError(f"window [{low}, {high}] is shorter than {MIN_WINDOW} lags", window=window)


def _r_squared(x: NDArray[np.float64], y: NDArray[np.float64], slope: float, intercept: float) -> float:
    residual = y - (slope * x + intercept)
    spread = float(np.sum((y - np.mean(y)) ** 2))
    if spread == 0.0:
        return 1.0
    return 1.0 - float(np.sum(residual**2)) / spread


def fit_power_law(lags: ArrayLike, values: ArrayLike, window: tuple[int, int]) -> AsymptoticFit:
    """Least-squares fit of log|values| against log n over the window."""
    _check_window(window)
    n = np.asarray(lags, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    mask = (n >= window[0]) & (n <= window[1]) & (v != 0.0)
    if mask.sum() < 2:
        raise AccuracyError("power-law fit needs two nonzero points in the window", window=window)
    x, y = np.log(n[mask]), np.log(np.abs(v[mask]))
    slope, intercept = np.polyfit(x, y, 1)
    sign = float(np.sign(np.mean(v[mask])))
    return AsymptoticFit(
        kind=FitKind.POWER,
        exponent=float(slope),
        constant=sign * math.exp(intercept),
        r_squared=_r_squared(x, y, slope, intercept),
        window=window,
        points=int(mask.sum()),
    )


def fit_exponential(lags: ArrayLike, values: ArrayLike, window: tuple[int, int]) -> AsymptoticFit:
    """Least-squares fit of log|values| against n over the window."""
    _check_window(window)
    n = np.asarray(lags, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    mask = (n >= window[0]) & (n <= window[1]) & (np.abs(v) > 0.0)
    if mask.sum() < MIN_WINDOW:
        raise AccuracyError(
            f"only {int(mask.sum())} nonzero values in window {window}; the sequence underflows too early",
            window=window,
        )
    x, y = n[mask], np.log(np.abs(v[mask]))
    slope, intercept = np.polyfit(x, y, 1)
    return AsymptoticFit(
        kind=FitKind.EXPONENTIAL,
        exponent=float(slope),
        constant=math.exp(intercept),
        r_squared=_r_squared(x, y, slope, intercept),
        window=window,
        points=int(mask.sum()),
    )


def estimate_d(alpha: PacfSeries, window: tuple[int, int]) -> AsymptoticFit:
    """
    d as the mean of n alpha_n over the window, with its standard deviation.

    Raises:
        DomainError: If the window holds no computed lag
    """
    _check_window(window)
    mask = alpha.window(*window)
    if not mask.any():
        raise DomainError(f"no computed lags in window {window}", window=window)
    scaled = alpha.lags[mask] * alpha.alpha[mask]
    r_squared = None
    if np.all(alpha.alpha[mask] != 0.0) and mask.sum() >= 2:
        r_squared = fit_power_law(alpha.lags, alpha.alpha, window).r_squared
    return AsymptoticFit(
        kind=FitKind.MEAN,
        exponent=-1.0,
        constant=float(np.mean(scaled)),
        dispersion=float(np.std(scaled)),
        r_squared=r_squared,
        window=window,
        points=int(mask.sum()),
    )


def growth_ratio(values: ArrayLike) -> float:
    """(S_N - S_{N/2}) / (S_{N/2} - S_{N/4}) for the partial sums S of |values|."""
    sums = np.cumsum(np.abs(np.asarray(values, dtype=np.float64)))
    last = len(sums) - 1
    current = sums[last] - sums[last // 2]
    previous = sums[last // 2] - sums[last // 4]
    # rounding noise past a finite support counts as no growth
    if previous <= 0.0 or current <= NEGLIGIBLE * sums[last]:
        return 0.0
    return float(current / previous)


def classify_growth(ratio: float) -> Growth:
    verify = get_settings().verification
    if ratio < verify.bounded_ratio:
        return Growth.BOUNDED
    if ratio <= verify.power_ratio:
        return Growth.LOG
    return Growth.POWER


def baxter_diagnostic(alpha: PacfSeries, gamma: CoefficientSequence) -> BaxterDiagnostic:
    """
    Classify sum |alpha_n| and sum |gamma_n| as bounded, logarithmic or power growth.

    Each partial sum is read at N, N/2 and N/4 for N the last computed lag;
    the increment ratio is 2^(1-p) for terms ~ n^-p and 1 for 1/n terms.
    """
    horizon = alpha.n_max
    if len(alpha) != horizon:
        raise DomainError("baxter_diagnostic needs alpha at every lag 1..N", lags=len(alpha))
    gamma_values = gamma.head(horizon)[1:]
    alpha_ratio = growth_ratio(alpha.alpha)
    gamma_ratio = growth_ratio(gamma_values)
    return BaxterDiagnostic(
        horizon=horizon,
        alpha_abs_sum=float(np.sum(np.abs(alpha.alpha))),
        gamma_abs_sum=float(np.sum(np.abs(gamma.head(horizon)))),
        alpha_growth=classify_growth(alpha_ratio),
        gamma_growth=classify_growth(gamma_ratio),
        alpha_ratio=alpha_ratio,
        gamma_ratio=gamma_ratio,
    )


def alpha_beta_limit(d: float, farima: bool = True) -> float:
    """
    Conjectured lim alpha_n / beta(n).

    pi d / sin(pi d) for 0 < d < 1/2 and 1 for d <= 0 in the regularly varying
    class; FARIMA models have alpha_n / beta(n) = pi d / sin(pi d) for every d != 0.
    """
    if d == 0.0:
        return 1.0
    if d < 0.0 and not farima:
        return 1.0
    return math.pi * d / math.sin(math.pi * d)


def alpha_beta_ratio_probe(
    alpha: PacfSeries,
    beta: BetaSequence,
    window: tuple[int, int],
    limit: float | None = None,
) -> RatioProbe:
    """alpha_n / beta(n) over the window; skipped when beta vanishes there."""
    mask = alpha.window(*window) & (alpha.lags <= beta.n_max)
    lags = alpha.lags[mask]
    betas = beta.values[lags]
    if not lags.size or np.any(betas == 0.0):
        return RatioProbe(name="alpha_beta", window=window, limit=limit, skipped=True)
    ratios = alpha.alpha[mask] / betas
    return RatioProbe(
        name="alpha_beta",
        window=window,
        lags=lags.tolist(),
        ratios=ratios.tolist(),
        limit=limit,
    )


def covariance_relation_probe(
    alpha: PacfSeries,
    gamma: CoefficientSequence,
    window: tuple[int, int],
) -> RatioProbe:
    """alpha_n sum_{|k|<=n} gamma_k / gamma_n, conjectured to tend to 1; never asserted."""
    mask = alpha.window(*window)
    lags = alpha.lags[mask]
    if not lags.size:
        return RatioProbe(name="covariance_relation", window=window, skipped=True)
    values = gamma.head(int(lags[-1]))
    two_sided = values[0] + 2.0 * np.cumsum(values)[lags] - 2.0 * values[0]
    g = values[lags]
    if np.any(g == 0.0):
        return RatioProbe(name="covariance_relation", window=window, skipped=True)
    ratios = alpha.alpha[mask] * two_sided / g
    return RatioProbe(
        name="covariance_relation",
        window=window,
        lags=lags.tolist(),
        ratios=ratios.tolist(),
        limit=1.0,
    )
