"""
PACFLab Asymptotics Module

tau constants, tail fits, probes and the verification scenarios.
"""

from pacflab.asymptotics.constants import (
    arcsin_partial_sum,
    tau_generic,
    tau_odd,
    tau_odd_table,
    tau_table,
    zeta,
)
from pacflab.asymptotics.fits import (
    alpha_beta_limit,
    alpha_beta_ratio_probe,
    baxter_diagnostic,
    classify_growth,
    covariance_relation_probe,
    estimate_d,
    fit_exponential,
    fit_power_law,
    growth_ratio,
)
from pacflab.asymptotics.models import (
    AsymptoticFit,
    BaxterDiagnostic,
    FitKind,
    Growth,
    RatioProbe,
    RegularVariationReport,
    ScenarioResult,
    TauTable,
    VerificationReport,
)
from pacflab.asymptotics.scenarios import (
    VerificationScenario,
    default_scenarios,
    regular_variation_ratio,
    verify_arma_decay,
    verify_regular_variation,
)
from pacflab.asymptotics.verification import VerificationService

__all__ = [
    # Models
    "TauTable",
    "AsymptoticFit",
    "FitKind",
    "Growth",
    "BaxterDiagnostic",
    "RatioProbe",
    "RegularVariationReport",
    "ScenarioResult",
    "VerificationReport",
    # Constants
    "tau_odd",
    "tau_odd_table",
    "tau_generic",
    "tau_table",
    "arcsin_partial_sum",
    "zeta",
    # Fits and probes
    "fit_power_law",
    "fit_exponential",
    "estimate_d",
    "growth_ratio",
    "classify_growth",
    "baxter_diagnostic",
    "alpha_beta_limit",
    "alpha_beta_ratio_probe",
    "covariance_relation_probe",
    # Scenarios
    "VerificationScenario",
    "VerificationService",
    "default_scenarios",
    "regular_variation_ratio",
    "verify_arma_decay",
    "verify_regular_variation",
]
