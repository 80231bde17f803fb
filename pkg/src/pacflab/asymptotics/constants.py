"""
PACFLab Asymptotic Constants

The tau_k constants of the d_k(n) asymptotics and the Riemann zeta
function used by the regularly varying covariance class.
"""

import math

import numpy as np
from numpy.polynomial import legendre
from numpy.typing import NDArray
from scipy import special

from pacflab.asymptotics.models import TauTable
from pacflab.core.config import get_settings
from pacflab.core.errors import AccuracyError, DomainError

GENERIC_PANELS = 48
GENERIC_TOLERANCE = 1e-10
ZETA_TERMS = 10
ZETA_CORRECTIONS = 10


def tau_odd_table(count: int) -> NDArray[np.float64]:
    """
    tau_1, tau_3, ..., tau_{2 count - 1}.

    tau_{2k-1} = b_{k-1} / (pi (2k - 1)) with b_0 = 1 and
    b_j = b_{j-1} (2j - 1)/(2j), the central binomial coefficient over 4^j.
    """
    if count < 1:
        raise DomainError("tau table needs at least one entry", count=count)
    j = np.arange(1, count, dtype=np.float64)
    b = np.concatenate(([1.0], np.cumprod((2.0 * j - 1.0) / (2.0 * j))))
    return b / (math.pi * (2.0 * np.arange(1, count + 1) - 1.0))


def tau_odd(k: int) -> float:
    """tau_{2k-1} for k >= 1."""
    if k < 1:
        raise DomainError(f"tau_odd needs k >= 1, got {k}", k=k)
    return float(tau_odd_table(k)[-1])


def arcsin_partial_sum(x: float, count: int) -> float:
    """sum_{k<=count} tau_{2k-1} x^{2k-1}, which tends to arcsin(x)/pi."""
    powers = x ** (2.0 * np.arange(1, count + 1) - 1.0)
    return float(np.dot(tau_odd_table(count), powers))


def _graded_rule(panels: int, nodes: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Gauss-Legendre on [2^-(j+1), 2^-j], j < panels, plus [0, 2^-panels]."""
    t, w = legendre.leggauss(nodes)
    edges = np.concatenate(([0.0], 2.0 ** -np.arange(panels, -1, -1, dtype=np.float64)))
    low, high = edges[:-1], edges[1:]
    half = (high - low) / 2.0
    x = (low[:, None] + half[:, None] * (t[None, :] + 1.0)).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return x, weights


def _tau_quadrature(k: int, panels: int, nodes: int) -> float:
    x, w = _graded_rule(panels, nodes)
    kernel = 1.0 / (x[:, None] + x[None, :] - x[:, None] * x[None, :])
    vector = np.ones_like(x)
    for _ in range(k - 2):
        vector = kernel @ (w * vector)
    return float(np.dot(w, vector)) / math.pi**k


def tau_generic(k: int, quad_points: int = 16) -> float:
    """
    tau_k by quadrature of its iterated integral.

    With t = 1/(1 + s) every s-integral moves to [0, 1] and the kernel
    1/(s + s' + 1) becomes 1/(t + t' - t t'), so
    tau_k = pi^-k 1^T W (K W)^(k-2) 1 on a rule graded towards t = 0.

    Raises:
        DomainError: If k is outside 1..tau_max_generic
        AccuracyError: If a refined rule disagrees beyond tolerance
    """
    limit = get_settings().verification.tau_max_generic
    if k < 1 or k > limit:
        raise DomainError(f"tau_generic supports 1 <= k <= {limit}, got {k}", k=k)
    if k == 1:
        return 1.0 / math.pi
    value = _tau_quadrature(k, GENERIC_PANELS, quad_points)
    refined = _tau_quadrature(k, GENERIC_PANELS + 16, quad_points + 8)
    if abs(value - refined) > GENERIC_TOLERANCE:
        raise AccuracyError(
            f"tau_{k} quadrature did not settle",
            k=k,
            estimate=value,
            refined=refined,
        )
    return refined


def tau_table(count: int | None = None, generic_max: int | None = None) -> TauTable:
    verify = get_settings().verification
    count = count or verify.tau_order
    generic_max = generic_max or verify.tau_max_generic
    return TauTable(
        odd_taus=tau_odd_table(count).tolist(),
        generic_taus={k: tau_generic(k) for k in range(1, generic_max + 1)},
    )


def zeta(s: float) -> float:
    """
    Riemann zeta by Euler-Maclaurin summation.

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_j B_2j/(2j)! s(s+1)...(s+2j-2) N^(-s-2j+1)
    with N = 10 and ten Bernoulli corrections.
    """
    if s == 1.0:
        raise DomainError("zeta has a pole at s = 1", s=s)
    n = ZETA_TERMS
    head = float(np.sum(np.arange(1, n, dtype=np.float64) ** -s))
    total = head + n ** (1.0 - s) / (s - 1.0) + 0.5 * n**-s
    bernoulli = special.bernoulli(2 * ZETA_CORRECTIONS)
    for j in range(1, ZETA_CORRECTIONS + 1):
        rising = special.poch(s, 2 * j - 1)
        total += bernoulli[2 * j] / math.factorial(2 * j) * rising * n ** (-s - 2 * j + 1)
    return total
