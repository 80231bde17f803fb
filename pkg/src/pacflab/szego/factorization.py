"""
PACFLab Szego Factorization

Spectral density from an autocovariance sequence, and MA/AR coefficients
from the log-spectrum (cepstral) factorization of the Szego function.
"""

import math

import numpy as np
from numpy.typing import NDArray

from pacflab.coeffs.models import CoefficientSequence, DecayClass, SequenceKind
from pacflab.core.config import get_settings
from pacflab.core.errors import DomainError, FactorizationError, NotPositiveDefiniteError
from pacflab.core.logging import PacfEvents, get_logger
from pacflab.core.series import series_exp, series_reciprocal
from pacflab.szego.models import BaxterReport, CepstrumResult, SpectralGrid

logger = get_logger(__name__)
events = PacfEvents()

NEGATIVE_TOLERANCE = 1e-10


def _grid_phase(k: NDArray[np.float64], size: int) -> NDArray[np.complex128]:
    """e^{-i k theta_j} = (-1)^k e^{-i pi k/N} e^{-2 pi i k j/N} on the offset grid."""
    return np.where(k % 2 == 0, 1.0, -1.0) * np.exp(-1j * math.pi * k / size)


def power_law_autocov(d: float, n_max: int) -> CoefficientSequence:
    """gamma_n = (1 + n)^(-(1 - 2d)), a regularly varying covariance for d < 1/2."""
    if not -0.5 < d < 0.5:
        raise DomainError(f"power-law covariance requires -1/2 < d < 1/2, got d={d}", d=d)
    exponent = 1.0 - 2.0 * d

    def values(m: int) -> NDArray[np.float64]:
        return (1.0 + np.arange(m + 1, dtype=np.float64)) ** (-exponent)

    return CoefficientSequence(
        values=values(n_max),
        kind=SequenceKind.AUTOCOV,
        decay=DecayClass.power_law(exponent),
        generator=values,
    )


def density_from_autocov(
    gamma: CoefficientSequence,
    size: int,
    span: int | None = None,
    floor: float | None = None,
) -> SpectralGrid:
    """
    Delta(theta) = (1/2pi) sum_k gamma_|k| e^{-ik theta} on `size` grid points.

    Uses gamma_1..gamma_K, K = span * size (or all available terms of a
    sequence that cannot be extended), folded modulo `size` into a single FFT.
    For extendable sequences the remainder k > K is estimated by two rounds of
    summation by parts.
    """
    settings = get_settings().szego
    span = span or settings.autocov_span
    floor = settings.density_floor if floor is None else floor
    if gamma.kind != SequenceKind.AUTOCOV:
        raise DomainError("density_from_autocov expects an autocovariance sequence")
    if size < 2 or size & (size - 1):
        raise DomainError(f"grid size must be a power of two, got {size}", size=size)

    extendable = gamma.generator is not None
    terms = span * size if extendable else gamma.n_max
    values = gamma.head(terms + 2) if extendable else gamma.values
    k = np.arange(1, terms + 1)
    weighted = values[1 : terms + 1] * _grid_phase(k, size)
    folded = np.bincount(k % size, weights=weighted.real, minlength=size) + 1j * np.bincount(
        k % size, weights=weighted.imag, minlength=size
    )
    one_sided = np.fft.fft(folded)

    if extendable:
        theta = -math.pi + 2.0 * math.pi * (np.arange(size) + 0.5) / size
        z = np.exp(-1j * theta)
        first = values[terms + 1]
        step = values[terms + 2] - values[terms + 1]
        one_sided += z ** (terms + 1) / (1.0 - z) * (first + step * z / (1.0 - z))

    density = (values[0] + 2.0 * one_sided.real) / (2.0 * math.pi)
    scale = float(np.max(np.abs(density)))
    if np.min(density) < -NEGATIVE_TOLERANCE * scale:
        raise NotPositiveDefiniteError(
            "autocovariance has a negative spectral density",
            minimum=float(np.min(density)),
        )
    low = density < floor
    floored = int(low.sum())
    if floored:
        logger.warning("density_floored", samples=floored, floor=floor)
    density = np.where(low, floor, density)
    return SpectralGrid(size=size, values=density, floor=floor, floored=floored)


def log_coefficients(grid: SpectralGrid) -> NDArray[np.float64]:
    """L_k = (1/2pi) integral log(2pi Delta) e^{ik theta} d theta for k = 0..N/2."""
    spectrum = np.fft.ifft(np.log(2.0 * math.pi * grid.values))
    k = np.arange(grid.size // 2 + 1)
    return (np.conj(_grid_phase(k, grid.size)) * spectrum[: grid.size // 2 + 1]).real


def _residual(c: NDArray[np.float64], grid: SpectralGrid) -> float:
    """max_j | |D_n(e^{i theta_j})|^2 - 2pi Delta_j | / (2pi Delta_j)."""
    k = np.arange(len(c))
    padded = np.zeros(grid.size, dtype=np.complex128)
    padded[: len(c)] = c * np.conj(_grid_phase(k, grid.size))
    transfer = np.fft.ifft(padded) * grid.size
    target = 2.0 * math.pi * grid.values
    return float(np.max(np.abs(np.abs(transfer) ** 2 - target) / target))


def factorize(
    grid: SpectralGrid,
    n_max: int,
    tol: float | None = None,
) -> CepstrumResult:
    """
    MA and AR coefficients of the outer function D with |D|^2 = 2 pi Delta.

    log D(z) = L_0/2 + sum_{k>=1} L_k z^k; c is its exponential and a = -1/D.
    With tol=None the residual is reported but not enforced.
    """
    half = grid.size // 2
    if n_max >= half:
        raise DomainError(f"n_max={n_max} requires a grid larger than {grid.size}", size=grid.size)
    log_coeffs = log_coefficients(grid)
    g = log_coeffs.copy()
    g[0] /= 2.0
    c_values = series_exp(g, n_max)
    a_values = series_reciprocal(c_values, n_max, sign=-1.0)
    residual = _residual(c_values, grid)
    events.factorization_completed(grid.size, residual, n_max=n_max, floored=grid.floored)
    if tol is not None and residual > tol:
        raise FactorizationError(
            f"factorization residual {residual:.3e} exceeds {tol:.3e}",
            residual=residual,
            grid_size=grid.size,
        )
    c = CoefficientSequence(values=c_values, kind=SequenceKind.MA)
    a = CoefficientSequence(values=a_values, kind=SequenceKind.AR)
    return CepstrumResult(log_coeffs=log_coeffs, c=c, a=a, residual=residual)


def _partial_sum_growth(values: NDArray[np.float64]) -> tuple[float, float]:
    """(S_K, (S_K - S_K/2)/(S_K/2 - S_K/4)) for S the partial sums of |values|."""
    sums = np.cumsum(np.abs(values))
    last = len(sums) - 1
    full, half, quarter = sums[last], sums[last // 2], sums[last // 4]
    previous = half - quarter
    if previous <= 0.0:
        return float(full), 0.0
    return float(full), float((full - half) / previous)


def baxter_condition(
    gamma: CoefficientSequence,
    grid: SpectralGrid,
    horizon: int | None = None,
) -> BaxterReport:
    """Numeric check of Baxter's condition: summable gamma and a density bounded away from zero."""
    verify = get_settings().verification
    horizon = horizon or verify.baxter_horizon
    values = gamma.head(horizon)
    abs_sum, ratio = _partial_sum_growth(values)
    summable = ratio < verify.bounded_ratio
    # floored samples count as zeros of the density
    density_min = 0.0 if grid.floored else grid.minimum
    return BaxterReport(
        abs_sum=abs_sum,
        growth_ratio=ratio,
        summable=summable,
        density_min=density_min,
        satisfied=summable and density_min > 0.0,
    )
