"""
PACFLab Logging

Structured logging with context propagation across
model pipelines and verification runs.
"""

import logging
import sys
from typing import Any

import structlog
from structlog.types import Processor

from pacflab.core.config import get_settings


def configure_logging() -> None:
    """Configure structured logging for PACFLab."""
    settings = get_settings()

    shared_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.UnicodeDecoder(),
    ]

    if settings.environment == "development":
        processors = shared_processors + [
            structlog.dev.ConsoleRenderer(colors=False),
        ]
    else:
        processors = shared_processors + [
            structlog.processors.format_exc_info,
            structlog.processors.JSONRenderer(),
        ]

    # stdout carries CSV output; uncached so each configure binds the current stderr
    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, settings.log_level)
        ),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str | None = None) -> structlog.BoundLogger:
    """Get a structured logger instance."""
    return structlog.get_logger(name)


class LogContext:
    """Context manager for adding temporary log context."""

    def __init__(self, **kwargs: Any):
        self._context = kwargs
        self._keys: list[str] = []

    def __enter__(self) -> "LogContext":
        structlog.contextvars.bind_contextvars(**self._context)
        self._keys = list(self._context)
        return self

    def __exit__(self, *args: Any) -> None:
        structlog.contextvars.unbind_contextvars(*self._keys)


def bind_model_context(model_name: str, model_params: dict[str, Any] | None = None) -> None:
    """Bind model context to all subsequent log entries."""
    structlog.contextvars.bind_contextvars(
        model_name=model_name,
        model_params=model_params,
    )


def bind_command_context(command: str, run_id: str | None = None) -> None:
    """Bind CLI command context to all subsequent log entries."""
    structlog.contextvars.bind_contextvars(command=command, run_id=run_id)


def clear_context() -> None:
    """Clear all bound context variables."""
    structlog.contextvars.clear_contextvars()


class PacfEvents:
    """Standard event logging for PACFLab computations."""

    def __init__(self) -> None:
        self.logger = get_logger("pacflab.events")

    def series_computed(self, kind: str, length: int, **kwargs: Any) -> None:
        self.logger.debug("series_computed", kind=kind, length=length, **kwargs)

    def beta_computed(self, variant: str, n_max: int, max_tail_bound: float, **kwargs: Any) -> None:
        self.logger.info(
            "beta_computed",
            variant=variant,
            n_max=n_max,
            max_tail_bound=max_tail_bound,
            **kwargs,
        )

    def lag_evaluated(self, lag: int, alpha: float, trunc_err: float, **kwargs: Any) -> None:
        self.logger.debug(
            "lag_evaluated",
            lag=lag,
            alpha=alpha,
            trunc_err=trunc_err,
            **kwargs,
        )

    def factorization_completed(self, grid_size: int, residual: float, **kwargs: Any) -> None:
        self.logger.info(
            "factorization_completed",
            grid_size=grid_size,
            residual=residual,
            **kwargs,
        )

    def scenario_evaluated(self, scenario: str, passed: bool, **kwargs: Any) -> None:
        self.logger.info("scenario_evaluated", scenario=scenario, passed=passed, **kwargs)

    def run_completed(self, command: str, status: str, **kwargs: Any) -> None:
        self.logger.info("run_completed", command=command, status=status, **kwargs)
