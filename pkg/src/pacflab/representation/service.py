"""
PACFLab Representation Service

alpha_n = sum_{k odd} d_k(n) / (1 + sum_{k even} d_k(n)) evaluated from a
beta sequence, and the model-level service comparing it with Levinson.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from pacflab.beta.models import BetaSequence
from pacflab.coeffs.models import TruncationPolicy
from pacflab.coeffs.registry import ProcessModel
from pacflab.core.config import get_settings
from pacflab.core.errors import DivergenceError, DomainError
from pacflab.core.logging import PacfEvents, get_logger
from pacflab.levinson.recursion import pacf_via_levinson
from pacflab.representation.discretization import KernelDiscretization
from pacflab.representation.models import (
    ComparisonRow,
    ComparisonTable,
    PacfMethod,
    PacfSeries,
)

logger = get_logger(__name__)
events = PacfEvents()

DEPTH_PROBE = 64
MIN_DEPTH = 4


class LagResult(NamedTuple):
    alpha: float
    odd: float
    even: float
    depth: int
    trunc_err: float
    tail_span: float


def _discretization(
    beta: BetaSequence,
    policy: TruncationPolicy,
    mid_len: int | None = None,
    tail_span: float | None = None,
) -> KernelDiscretization:
    return KernelDiscretization(
        beta,
        mid_len or policy.mid_len,
        policy.tail_span if tail_span is None else tail_span,
        policy.tail_nodes,
    )


def _ratio(beta: BetaSequence, lag: int, odd: float, even: float) -> float:
    return float((beta.values[lag] + odd) / (1.0 + even))


def _converged_sums(
    beta: BetaSequence,
    policy: TruncationPolicy,
    lag: int,
) -> tuple[KernelDiscretization, float, float, float]:
    """
    Resolvent sums with the m-sum continuation widened until it settles.

    The span doubles from tail_span while alpha on the full span and on its
    first half differ by more than abs_tol, up to tail_span_max. Returns the
    rule, the odd and even sums and that last difference.
    """
    span = policy.tail_span
    while True:
        rule = _discretization(beta, policy, tail_span=span)
        (odd, even), (half_odd, half_even) = rule.nested_resolvent_sums(lag)
        gap = abs(_ratio(beta, lag, odd, even) - _ratio(beta, lag, half_odd, half_even))
        if gap <= policy.abs_tol or span == 0.0:
            return rule, odd, even, gap
        if 2.0 * span > policy.tail_span_max:
            logger.debug("tail_span_exhausted", lag=lag, tail_span=span, gap=gap)
            return rule, odd, even, gap
        span *= 2.0


def _lags(n_max: int, lags: ArrayLike | None) -> NDArray[np.int64]:
    if lags is None:
        return np.arange(1, n_max + 1)
    chosen = np.unique(np.asarray(lags, dtype=np.int64))
    if chosen.size and (chosen[0] < 1 or chosen[-1] > n_max):
        raise DomainError(f"lags must lie in 1..{n_max}", n_max=n_max)
    return chosen


def required_beta_length(n_max: int, policy: TruncationPolicy) -> int:
    """Largest beta index the representation reads for lags up to n_max."""
    return n_max + 2 * (policy.mid_len - 1)


def dk_sequence(
    beta: BetaSequence,
    n: int,
    k_max: int,
    policy: TruncationPolicy,
) -> NDArray[np.float64]:
    """
    d_1(n)..d_k_max(n) by operator iteration.

    w^(1)[m] = beta(m + n), w^(j+1)[m] = sum_m' beta(m + m' + n) w^(j)[m'] and
    d_k(n) = sum_m beta(m + n) w^(k-1)[m], with the m-sums discretized by
    KernelDiscretization.
    """
    if k_max < 1:
        raise DomainError("k_max must be at least 1", k_max=k_max)
    return _discretization(beta, policy).iterate(n, k_max)


def _termination_depth(d: NDArray[np.float64], policy: TruncationPolicy, lag: int) -> int:
    """First k >= 4 with |d_k| < abs_tol (1 - rho), rho = |d_{k+2}/d_k|, extrapolated past the probe."""
    probe = len(d)
    for k in range(MIN_DEPTH, probe - 1):
        current = abs(d[k - 1])
        if current == 0.0:
            return k
        rho = abs(d[k + 1]) / current
        if rho < 1.0 and current < policy.abs_tol * (1.0 - rho):
            return k
    last = probe if probe % 2 == 0 else probe - 1
    if last - 2 < MIN_DEPTH:
        return min(probe, policy.outer_depth)
    current, previous = abs(d[last - 1]), abs(d[last - 3])
    if previous == 0.0 or current == 0.0:
        return last
    rho = current / previous
    if rho >= 1.0:
        raise DivergenceError(
            f"outer series is not contracting at lag {lag} (rho={rho:.4f})",
            lag=lag,
            rho=rho,
        )
    target = policy.abs_tol * (1.0 - rho)
    steps = max(0, math.ceil(math.log(target / current) / math.log(rho)))
    return min(last + 2 * steps, policy.outer_depth)


def _evaluate(beta: BetaSequence, lag: int, policy: TruncationPolicy) -> LagResult:
    fine, odd, even, span_gap = _converged_sums(beta, policy, lag)
    alpha = _ratio(beta, lag, odd, even)
    coarse = _discretization(beta, policy, max(1, policy.mid_len // 2), fine.tail_span)
    coarse_alpha = _ratio(beta, lag, *coarse.resolvent_sums(lag))

    probe = min(policy.outer_depth, DEPTH_PROBE)
    depth = _termination_depth(fine.iterate(lag, probe), policy, lag)

    used = beta.tail_bound[lag : fine.required_length(lag) + 1]
    trunc_err = abs(alpha - coarse_alpha) + span_gap + float(np.max(used))
    if not abs(alpha) < 1.0:
        raise DivergenceError(
            f"alpha_{lag} = {alpha:.6g} violates |alpha| < 1",
            lag=lag,
            alpha=alpha,
        )
    events.lag_evaluated(lag, alpha, trunc_err, depth=depth, tail_span=fine.tail_span)
    return LagResult(
        alpha=alpha,
        odd=odd,
        even=even,
        depth=depth,
        trunc_err=trunc_err,
        tail_span=fine.tail_span,
    )


def _evaluate_lags(
    beta: BetaSequence,
    lags: NDArray[np.int64],
    policy: TruncationPolicy,
    threads: int | None,
) -> list[LagResult]:
    workers = threads or get_settings().threads
    if workers == 1 or len(lags) <= 1:
        return [_evaluate(beta, int(n), policy) for n in lags]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda n: _evaluate(beta, int(n), policy), lags))


def pacf_via_representation(
    beta: BetaSequence,
    n_max: int,
    policy: TruncationPolicy,
    lags: ArrayLike | None = None,
    threads: int | None = None,
) -> PacfSeries:
    """
    PACF from the beta kernel, for all lags 1..n_max or the given subset.

    U and V are reported as sum_{k odd} d_k and 1 + sum_{k even} d_k, i.e.
    divided by c_0^2.
    """
    chosen = _lags(n_max, lags)
    results = _evaluate_lags(beta, chosen, policy, threads)
    alpha = np.array([r.alpha for r in results])
    numerator = np.array([beta.values[n] + r.odd for n, r in zip(chosen, results, strict=True)])
    series = PacfSeries(
        method=PacfMethod.REPRESENTATION,
        lags=chosen,
        alpha=alpha,
        u=numerator,
        v=np.array([1.0 + r.even for r in results]),
        depth_used=np.array([r.depth for r in results]),
        trunc_err=np.array([r.trunc_err for r in results]),
    )
    events.series_computed(
        "pacf_repr",
        len(series),
        variant=beta.variant.value,
        max_trunc_err=float(np.max(series.trunc_err)) if len(series) else 0.0,
        max_tail_span=max((r.tail_span for r in results), default=0.0),
    )
    return series


def corollary_approx(
    beta: BetaSequence,
    n_max: int,
    policy: TruncationPolicy,
    lags: ArrayLike | None = None,
) -> NDArray[np.float64]:
    """Numerator-only approximation alpha_n ~ sum_k d_{2k-1}(n)."""
    chosen = _lags(n_max, lags)
    return np.array([beta.values[n] + _converged_sums(beta, policy, int(n))[1] for n in chosen])


class PacfService:
    """
    PACF of a process model by either method.

    Example:
        service = PacfService(ModelRegistry.create("farima", d=0.3))
        table = service.compare(50)
    """

    def __init__(self, model: ProcessModel, policy: TruncationPolicy | None = None):
        self.model = model
        self.policy = policy or TruncationPolicy.from_settings()

    def beta(self, n_max: int) -> BetaSequence:
        return self.model.beta(required_beta_length(n_max, self.policy), self.policy)

    def representation(self, n_max: int, lags: ArrayLike | None = None) -> PacfSeries:
        return pacf_via_representation(self.beta(n_max), n_max, self.policy, lags=lags)

    def levinson(self, n_max: int) -> PacfSeries:
        return pacf_via_levinson(self.model.autocov(n_max), n_max, c0_sq=self.model.c0_sq)

    def compute(self, method: PacfMethod, n_max: int, lags: ArrayLike | None = None) -> PacfSeries:
        if method == PacfMethod.LEVINSON:
            return self.levinson(n_max)
        return self.representation(n_max, lags=lags)

    def compare(
        self,
        n_max: int,
        tolerance: float | None = None,
        lags: ArrayLike | None = None,
    ) -> ComparisonTable:
        """
        Per-lag agreement of the two methods.

        Each lag passes when |alpha_repr - alpha_levinson| is within the larger
        of `tolerance` and the combined truncation estimates.
        """
        tolerance = 1e-8 if tolerance is None else tolerance
        repr_series = self.representation(n_max, lags=lags)
        lev_series = self.levinson(n_max)
        rows = []
        for index, n in enumerate(repr_series.lags):
            lev_alpha = float(lev_series.alpha[n - 1])
            combined = float(repr_series.trunc_err[index] + lev_series.trunc_err[n - 1])
            allowed = max(tolerance, combined)
            diff = abs(float(repr_series.alpha[index]) - lev_alpha)
            rows.append(
                ComparisonRow(
                    n=int(n),
                    alpha_repr=float(repr_series.alpha[index]),
                    alpha_levinson=lev_alpha,
                    abs_diff=diff,
                    tolerance=allowed,
                    passed=diff <= allowed,
                )
            )
        table = ComparisonTable(rows=rows)
        logger.info("methods_compared", lags=len(rows), max_abs_diff=table.max_abs_diff, passed=table.passed)
        return table
