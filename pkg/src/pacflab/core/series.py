"""
PACFLab Series Utilities

Power-series arithmetic and tail estimates shared by the
coefficient, factorization and kernel modules.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import signal, special


def binomial_series(exponent: float, n_max: int) -> NDArray[np.float64]:
    """
    Maclaurin coefficients of (1 - z)^(-exponent) up to z^n_max.

    Uses the ratio recursion x_n = x_{n-1} (n - 1 + exponent) / n, so no
    Gamma function is ever evaluated.
    """
    k = np.arange(1, n_max + 1, dtype=np.float64)
    factors = (k - 1.0 + exponent) / k
    return np.concatenate(([1.0], np.cumprod(factors)))


def rational_filter(
    numerator: ArrayLike,
    denominator: ArrayLike,
    x: NDArray[np.float64],
) -> NDArray[np.float64]:
    """Multiply a series by numerator(z)/denominator(z), truncated to len(x)."""
    return signal.lfilter(np.asarray(numerator, float), np.asarray(denominator, float), x)


def series_exp(g: NDArray[np.float64], n_max: int) -> NDArray[np.float64]:
    """
    Coefficients of exp(G(z)) for G(z) = sum g_k z^k.

    f_0 = exp(g_0), f_n = (1/n) sum_{k=1}^{n} k g_k f_{n-k}.
    """
    kg = np.zeros(n_max + 1)
    m = min(len(g), n_max + 1)
    kg[:m] = np.arange(m) * g[:m]
    f = np.zeros(n_max + 1)
    f[0] = math.exp(g[0])
    for n in range(1, n_max + 1):
        f[n] = np.dot(kg[1 : n + 1], f[n - 1 :: -1]) / n
    return f


def series_reciprocal(c: NDArray[np.float64], n_max: int, sign: float = 1.0) -> NDArray[np.float64]:
    """Coefficients of sign / C(z) up to z^n_max."""
    impulse = np.zeros(n_max + 1)
    impulse[0] = sign
    return signal.lfilter([1.0], c[: n_max + 1], impulse)


def compensated_dot(x: NDArray[np.float64], y: NDArray[np.float64]) -> float:
    """Dot product with exactly rounded accumulation of the products."""
    return math.fsum((x * y).tolist())


def power_tail_integral(
    p: float,
    r: float,
    n: ArrayLike,
    start: float,
) -> NDArray[np.float64]:
    """
    Integral of t^(-p) (t + n)^(-r) over [start, inf), vectorized over n >= 0.

    With b = p + r - 1 > 0 the integral equals
    (start + n)^(-b) / b * 2F1(p, b; b + 1; n / (n + start)).
    """
    b = p + r - 1.0
    if b <= 0.0:
        raise ValueError(f"tail integral diverges for p + r = {p + r}")
    n_arr = np.asarray(n, dtype=np.float64)
    total = start + n_arr
    return total ** (-b) / b * special.hyp2f1(p, b, b + 1.0, n_arr / total)


def geometric_length(rate: float, floor: int = 64, cap: int | None = None) -> int:
    """Number of terms after which rate^V falls below double precision."""
    if rate <= 0.0:
        return floor
    length = max(floor, math.ceil(-40.0 / math.log(rate)))
    return min(length, cap) if cap is not None else length
