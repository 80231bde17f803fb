"""
PACFLab Commands

Run configuration and the computation behind each subcommand. Commands
return tables and diagnostics; writing them is left to the output module.
"""

from pathlib import Path
from typing import Any, Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from pacflab.asymptotics.verification import VerificationService
from pacflab.coeffs.generators import convolution_residual, psi_phi_coeffs
from pacflab.coeffs.models import TruncationPolicy
from pacflab.coeffs.registry import CovarianceModel, FarimaModel, ModelRegistry, ProcessModel
from pacflab.core.config import get_settings
from pacflab.core.errors import ConfigError
from pacflab.core.logging import bind_model_context, get_logger
from pacflab.representation.models import PacfMethod, PacfSeries
from pacflab.representation.service import PacfService
from pacflab.szego.factorization import density_from_autocov, factorize

logger = get_logger(__name__)

Command = Literal["coeffs", "beta", "pacf", "compare", "verify", "factorize"]
Method = Literal["auto", "repr", "levinson", "both"]
OutputFormat = Literal["csv", "json"]


class RunConfig(BaseModel):
    """Everything a run depends on; echoed into the manifest."""

    model_config = ConfigDict(frozen=True)

    command: Command
    model: str = "builtin:farima"
    d: float | None = None
    phi: list[float] | None = None
    theta: list[float] | None = None
    n_max: int = Field(default=50, ge=1)
    method: Method = "auto"
    tolerance: float | None = Field(default=None, gt=0.0)
    grid_size: int | None = Field(default=None, ge=4)
    scenarios: list[str] = Field(default_factory=list)
    policy: TruncationPolicy = Field(default_factory=TruncationPolicy.from_settings)
    out: Path | None = None
    format: OutputFormat = "csv"

    @model_validator(mode="after")
    def check_grid(self) -> "RunConfig":
        if self.grid_size is not None and self.grid_size & (self.grid_size - 1):
            raise ValueError("--grid-size must be a power of two")
        return self


class CommandResult(BaseModel):
    """Table and/or JSON payload produced by a command, with manifest diagnostics."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    frame: pd.DataFrame | None = None
    payload: dict[str, Any] | None = None
    traces: dict[str, pd.DataFrame] = Field(default_factory=dict)
    diagnostics: dict[str, Any] = Field(default_factory=dict)
    model: dict[str, Any] = Field(default_factory=dict)
    passed: bool = True


def resolve_model(config: RunConfig) -> ProcessModel:
    model = ModelRegistry.resolve(
        config.model,
        d=config.d,
        phi=config.phi,
        theta=config.theta,
        grid_size=config.grid_size,
    )
    bind_model_context(model.name, model.describe())
    return model


def _series_diagnostics(series: PacfSeries) -> dict[str, Any]:
    return {
        "method": series.method.value,
        "lags": len(series),
        "max_trunc_err": float(np.max(series.trunc_err)) if len(series) else 0.0,
        "depth_range": [int(np.min(series.depth_used)), int(np.max(series.depth_used))]
        if len(series)
        else [],
    }


def run_coeffs(config: RunConfig, model: ProcessModel) -> CommandResult:
    c = model.ma(config.n_max)
    a = model.ar(config.n_max)
    gamma = model.autocov(config.n_max)
    columns: dict[str, Any] = {
        "n": np.arange(config.n_max + 1),
        "c": c.head(config.n_max),
        "a": a.head(config.n_max),
        "gamma": gamma.head(config.n_max),
    }
    if model.d < 0.0 and isinstance(model, FarimaModel | CovarianceModel):
        if isinstance(model, CovarianceModel):
            psi, phi = model.psi_phi(config.n_max)
        else:
            psi, phi = psi_phi_coeffs(model.spec, config.n_max)
        columns.update(psi=psi.head(config.n_max), phi=phi.head(config.n_max))
    residual = convolution_residual(c, a, config.n_max)
    return CommandResult(
        frame=pd.DataFrame(columns),
        diagnostics={
            "convolution_residual": float(np.max(np.abs(residual))),
            "gamma_max_tail_bound": (
                float(np.max(gamma.tail_bound)) if gamma.tail_bound is not None else 0.0
            ),
        },
    )


def run_beta(config: RunConfig, model: ProcessModel) -> CommandResult:
    beta = model.beta(config.n_max, config.policy)
    frame = pd.DataFrame(
        {"n": np.arange(beta.n_max + 1), "beta": beta.values, "tail_bound": beta.tail_bound}
    )
    return CommandResult(
        frame=frame,
        diagnostics={
            "variant": beta.variant.value,
            "max_tail_bound": float(np.max(beta.tail_bound)),
            "within_tolerance": beta.within_tolerance,
            "extension": beta.extension.describe(),
        },
    )


def _pacf_method(config: RunConfig, model: ProcessModel) -> Method:
    if config.method != "auto":
        return config.method
    # covariance-only models take the Levinson route unless asked otherwise
    return "levinson" if isinstance(model, CovarianceModel) else "repr"


def run_pacf(config: RunConfig, model: ProcessModel) -> CommandResult:
    method = _pacf_method(config, model)
    if method == "both":
        return run_compare(config, model, columns=("n", "alpha_repr", "alpha_levinson", "abs_diff"))
    series = PacfService(model, config.policy).compute(PacfMethod(method), config.n_max)
    frame = pd.DataFrame.from_records(series.records())
    return CommandResult(frame=frame, diagnostics=_series_diagnostics(series))


def run_compare(
    config: RunConfig,
    model: ProcessModel,
    columns: tuple[str, ...] = ("n", "alpha_repr", "alpha_levinson", "abs_diff", "tolerance", "pass"),
) -> CommandResult:
    table = PacfService(model, config.policy).compare(config.n_max, tolerance=config.tolerance)
    frame = pd.DataFrame.from_records([row.model_dump() for row in table.rows]).rename(columns={"passed": "pass"})
    return CommandResult(
        frame=frame.loc[:, list(columns)],
        diagnostics={"max_abs_diff": table.max_abs_diff, "all_pass": table.passed},
        passed=table.passed,
    )


def run_factorize(config: RunConfig, model: ProcessModel) -> CommandResult:
    size = config.grid_size or get_settings().szego.grid_size
    if config.n_max >= size // 2:
        raise ConfigError(f"--n-max must be below half the grid size {size}", n_max=config.n_max)
    if isinstance(model, CovarianceModel) and model.grid_size == size:
        grid = model.grid
    else:
        grid = density_from_autocov(model.autocov(config.n_max), size)
    result = factorize(grid, config.n_max, tol=config.tolerance)
    frame = pd.DataFrame(
        {
            "n": np.arange(config.n_max + 1),
            "c": result.c.values,
            "a": result.a.values,
            "log_coeff": result.log_coeffs[: config.n_max + 1],
        }
    )
    return CommandResult(
        frame=frame,
        diagnostics={
            "grid_size": size,
            "residual": result.residual,
            "floored": grid.floored,
            "c0_sq": result.c0_sq,
        },
    )


def run_verify(config: RunConfig) -> CommandResult:
    report = VerificationService(config.policy).run(config.scenarios or None)
    traces = {r.name: pd.DataFrame.from_records(r.trace) for r in report.results if r.trace}
    return CommandResult(
        payload=report.summary(),
        traces=traces,
        diagnostics={"scenarios": [r.name for r in report.results]},
        passed=report.passed,
    )


def run(config: RunConfig) -> CommandResult:
    """Dispatch a configured run to its command."""
    if config.command == "verify":
        return run_verify(config)
    model = resolve_model(config)
    handlers = {
        "coeffs": run_coeffs,
        "beta": run_beta,
        "pacf": run_pacf,
        "compare": run_compare,
        "factorize": run_factorize,
    }
    result = handlers[config.command](config, model)
    return result.model_copy(update={"model": model.describe()})
