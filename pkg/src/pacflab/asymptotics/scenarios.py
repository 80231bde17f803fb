"""
PACFLab Verification Scenarios

Asymptotic checks of the PACF as rule objects: each scenario computes
what it needs, compares it with the predicted behaviour and reports.
"""

import math
from typing import Any

import numpy as np

from pacflab.asymptotics.constants import arcsin_partial_sum, tau_generic, tau_odd, tau_odd_table, zeta
from pacflab.asymptotics.fits import baxter_diagnostic, estimate_d, fit_exponential
from pacflab.asymptotics.models import AsymptoticFit, FitKind, RegularVariationReport, ScenarioResult
from pacflab.coeffs.generators import farima_autocov
from pacflab.coeffs.models import FarimaSpec, TruncationPolicy
from pacflab.coeffs.registry import FarimaModel, PowerLawCovarianceModel
from pacflab.core.config import get_settings
from pacflab.core.errors import DomainError, NumericalError
from pacflab.core.logging import get_logger
from pacflab.levinson.recursion import delta_ratio, pacf_via_levinson
from pacflab.representation.service import PacfService
from pacflab.szego.factorization import power_law_autocov

logger = get_logger(__name__)

TRIVIAL_ALPHA = 1e-10


def verify_arma_decay(
    spec: FarimaSpec,
    n_max: int | None = None,
    policy: TruncationPolicy | None = None,
) -> AsymptoticFit:
    """
    Exponential decay of the PACF of an ARMA model.

    Fits log|alpha_n| against n over the configured window and checks the
    slope against log R + slack, R = max 1/|u_i| over the zeros of Theta.
    Models without an MA part pass when alpha vanishes on the window.
    """
    if spec.d != 0.0:
        raise DomainError("ARMA decay check requires d = 0", d=spec.d)
    verify = get_settings().verification
    low, high = verify.arma_window
    if n_max is not None:
        high = min(high, n_max)
    window = (low, high)
    service = PacfService(FarimaModel(spec), policy)
    series = service.representation(high, lags=np.arange(low, high + 1))
    rate = spec.ma_rate()
    if rate == 0.0:
        largest = float(np.max(np.abs(series.alpha)))
        return AsymptoticFit(
            kind=FitKind.EXPONENTIAL,
            exponent=-math.inf,
            constant=largest,
            window=window,
            points=len(series),
            bound=-math.inf,
            passed=largest <= TRIVIAL_ALPHA,
        )
    fit = fit_exponential(series.lags, series.alpha, window)
    bound = math.log(rate) + verify.arma_slack
    return fit.model_copy(update={"bound": bound, "passed": fit.exponent <= bound})


def regular_variation_ratio(d: float, n: int, alpha: float) -> tuple[str, float]:
    """alpha_n over its predicted asymptote in the power-law covariance class."""
    if d > 0.0:
        return "d/n", n * alpha / d
    if d == 0.0:
        return "1/(2n log n)", 2.0 * n * math.log(n) * alpha
    exponent = 1.0 - 2.0 * d
    return "n^(2d-1)/(2 zeta(1-2d) - 1)", alpha * n**exponent * (2.0 * zeta(exponent) - 1.0)


def _regvar_tolerance(d: float) -> float:
    verify = get_settings().verification
    if d > 0.0:
        return verify.regvar_tolerance_long
    if d == 0.0:
        return verify.regvar_tolerance_log
    return verify.regvar_tolerance_short


def verify_regular_variation(
    d: float,
    n_probe: int,
    policy: TruncationPolicy | None = None,
    grid_size: int | None = None,
) -> RegularVariationReport:
    """
    alpha_{n_probe} for gamma_n = (1 + |n|)^(-(1 - 2d)) against its asymptote.

    Levinson on gamma decides the verdict. The representation is also
    evaluated through the cepstral factorization and its gap reported. For
    d > 0 the density is singular at zero and the factorized coefficients
    carry an aliasing error of order d / grid_size, so the gap is looser there.
    """
    gamma = power_law_autocov(d, n_probe)
    levinson = pacf_via_levinson(gamma, n_probe)
    lev_alpha = float(levinson.alpha[-1])
    asymptote, lev_ratio = regular_variation_ratio(d, n_probe, lev_alpha)
    tolerance = _regvar_tolerance(d)
    extra: dict[str, Any]
    model = PowerLawCovarianceModel(d, grid_size=grid_size)
    try:
        series = PacfService(model, policy).representation(n_probe, lags=[n_probe])
        repr_alpha = float(series.alpha[-1])
        _, repr_ratio = regular_variation_ratio(d, n_probe, repr_alpha)
        extra = {
            "repr_alpha": repr_alpha,
            "repr_ratio": repr_ratio,
            "repr_gap": abs(repr_ratio - 1.0),
            "factorization_residual": model.factorization.residual,
        }
    except NumericalError as exc:
        logger.warning("regvar_representation_failed", d=d, error=str(exc))
        extra = {"repr_error": str(exc)}
    return RegularVariationReport(
        d=d,
        n_probe=n_probe,
        asymptote=asymptote,
        tolerance=tolerance,
        levinson_alpha=lev_alpha,
        levinson_ratio=lev_ratio,
        levinson_gap=abs(lev_ratio - 1.0),
        passed=abs(lev_ratio - 1.0) <= tolerance,
        **extra,
    )


class VerificationScenario:
    """Base class for verification scenarios."""

    name = "scenario"
    description = ""

    def __init__(self, policy: TruncationPolicy | None = None):
        self.policy = policy

    def evaluate(self) -> ScenarioResult:
        """Run the scenario and report pass/fail with metrics and a trace."""
        raise NotImplementedError


class FarimaDnScenario(VerificationScenario):
    """n alpha_n -> d on long-memory FARIMA models."""

    name = "farima-dn"
    description = "max |n alpha_n - d| over the window within a fraction of |d|"

    def __init__(
        self,
        policy: TruncationPolicy | None = None,
        specs: list[FarimaSpec] | None = None,
    ):
        super().__init__(policy)
        self.specs = specs or [
            FarimaSpec(d=0.3),
            FarimaSpec(d=-0.3),
            FarimaSpec(d=0.3, phi=(1.0, -0.5), theta=(1.0, 0.4)),
            FarimaSpec(d=-0.3, phi=(1.0, -0.5), theta=(1.0, 0.4)),
        ]

    def evaluate(self) -> ScenarioResult:
        verify = get_settings().verification
        low, high = verify.dn_window
        lags = np.arange(low, high + 1, verify.dn_stride)
        passed = True
        metrics: dict[str, Any] = {}
        trace: list[dict[str, Any]] = []
        for spec in self.specs:
            series = PacfService(FarimaModel(spec), self.policy).representation(high, lags=lags)
            fit = estimate_d(series, (low, high))
            worst = float(np.max(np.abs(series.lags * series.alpha - spec.d)))
            ok = worst <= verify.dn_tolerance * abs(spec.d)
            passed &= ok
            label = f"d={spec.d},phi={list(spec.phi)},theta={list(spec.theta)}"
            metrics[label] = {"d_estimate": fit.constant, "max_deviation": worst, "pass": ok}
            trace.extend(
                {"model": label, "n": int(n), "alpha": float(a), "n_alpha": float(n * a)}
                for n, a in zip(series.lags, series.alpha, strict=True)
            )
        return ScenarioResult(name=self.name, passed=passed, metrics=metrics, trace=trace)


class ArmaDecayScenario(VerificationScenario):
    """Exponential PACF decay of ARMA models at the MA root rate."""

    name = "arma-decay"
    description = "slope of log |alpha_n| at most log R + slack"

    def __init__(
        self,
        policy: TruncationPolicy | None = None,
        specs: list[FarimaSpec] | None = None,
    ):
        super().__init__(policy)
        self.specs = specs or [
            FarimaSpec(theta=(1.0, 0.5)),
            FarimaSpec(phi=(1.0, -0.5), theta=(1.0, 0.4)),
            FarimaSpec(phi=(1.0, -0.5)),
        ]

    def evaluate(self) -> ScenarioResult:
        passed = True
        metrics: dict[str, Any] = {}
        for spec in self.specs:
            fit = verify_arma_decay(spec, policy=self.policy)
            passed &= bool(fit.passed)
            label = f"phi={list(spec.phi)},theta={list(spec.theta)}"
            metrics[label] = fit.model_dump(mode="json")
        return ScenarioResult(name=self.name, passed=passed, metrics=metrics)


class RegularVariationScenario(VerificationScenario):
    """PACF asymptotics of the regularly varying covariance class."""

    name = "regvar"
    description = "alpha_n against d/n, 1/(2n log n) and n^(2d-1)/(2 zeta(1-2d) - 1)"

    probes = ((0.3, 400), (0.0, 1000), (-0.3, 400))

    def evaluate(self) -> ScenarioResult:
        reports = [verify_regular_variation(d, n, policy=self.policy) for d, n in self.probes]
        return ScenarioResult(
            name=self.name,
            passed=all(report.passed for report in reports),
            metrics={f"d={r.d}": r.model_dump(mode="json") for r in reports},
        )


class TauIdentityScenario(VerificationScenario):
    """The arcsin identity of the odd tau constants and the quadrature tau table."""

    name = "tau-identity"
    description = "sum tau_{2k-1} x^{2k-1} = arcsin(x)/pi; quadrature tau agrees with the closed form"

    points = (0.1, 0.5, 0.9)

    def evaluate(self) -> ScenarioResult:
        verify = get_settings().verification
        count = verify.tau_order
        taus = tau_odd_table(count + 1)
        passed = True
        metrics: dict[str, Any] = {}
        for x in self.points:
            error = abs(arcsin_partial_sum(x, count) - math.asin(x) / math.pi)
            # positive terms with ratio below x^2: the remainder is at most omitted/(1 - x^2)
            bound = taus[count] * x ** (2 * count + 1) / (1.0 - x * x) + 1e-15
            ok = error <= bound
            passed &= ok
            metrics[f"arcsin x={x}"] = {"error": error, "bound": bound, "pass": ok}
        generic = {k: tau_generic(k) for k in range(2, verify.tau_max_generic + 1)}
        tau_2_error = abs(generic[2] - 1.0 / math.pi**2)
        odd_errors = {k: abs(generic[k] - tau_odd((k + 1) // 2)) for k in generic if k % 2 == 1}
        bounded = all(value <= math.pi**-2 + 1e-9 for value in generic.values())
        passed &= tau_2_error <= 1e-8 and all(e <= 1e-6 for e in odd_errors.values()) and bounded
        metrics["tau_generic"] = {
            "values": {str(k): v for k, v in generic.items()},
            "tau_2_error": tau_2_error,
            "odd_errors": {str(k): e for k, e in odd_errors.items()},
            "bounded_by_inverse_pi_squared": bounded,
        }
        return ScenarioResult(name=self.name, passed=bool(passed), metrics=metrics)


class BaxterScenario(VerificationScenario):
    """Short versus long memory by PACF summability and by covariance summability."""

    name = "baxter"
    description = "ARMA short under both; d=0.3 long under both; d=-0.3 the two disagree"

    # (spec, PACF short memory, covariance short memory)
    cases = (
        (FarimaSpec(phi=(1.0, -0.5)), True, True),
        (FarimaSpec(d=0.3), False, False),
        (FarimaSpec(d=-0.3), False, True),
    )

    def evaluate(self) -> ScenarioResult:
        horizon = get_settings().verification.baxter_horizon
        passed = True
        metrics: dict[str, Any] = {}
        for spec, pacf_short, cov_short in self.cases:
            gamma = farima_autocov(spec, horizon)
            alpha = pacf_via_levinson(gamma, horizon)
            diagnostic = baxter_diagnostic(alpha, gamma)
            ok = (
                diagnostic.pacf_short_memory == pacf_short
                and diagnostic.covariance_short_memory == cov_short
            )
            passed &= ok
            metrics[f"d={spec.d},phi={list(spec.phi)}"] = {
                **diagnostic.model_dump(mode="json"),
                "definitions_agree": diagnostic.definitions_agree,
                "pass": ok,
            }
        return ScenarioResult(name=self.name, passed=passed, metrics=metrics)


class DeltaLawScenario(VerificationScenario):
    """n delta(n) -> d^2 for the finite-past prediction error."""

    name = "delta-law"
    description = "n delta(n) within a fraction of d^2"

    ds = (0.3, -0.3)

    def evaluate(self) -> ScenarioResult:
        verify = get_settings().verification
        n = verify.delta_lag
        passed = True
        metrics: dict[str, Any] = {}
        for d in self.ds:
            gamma = farima_autocov(FarimaSpec(d=d), n + 1)
            scaled = n * float(delta_ratio(gamma, 1.0, n)[-1])
            gap = abs(scaled / d**2 - 1.0)
            ok = gap <= verify.delta_tolerance
            passed &= ok
            metrics[f"d={d}"] = {"n_delta": scaled, "limit": d**2, "gap": gap, "pass": ok}
        return ScenarioResult(name=self.name, passed=passed, metrics=metrics)


def default_scenarios(policy: TruncationPolicy | None = None) -> list[VerificationScenario]:
    return [
        FarimaDnScenario(policy),
        ArmaDecayScenario(policy),
        RegularVariationScenario(policy),
        TauIdentityScenario(policy),
        BaxterScenario(policy),
        DeltaLawScenario(policy),
    ]
