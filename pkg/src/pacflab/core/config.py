"""
PACFLab Configuration Management

Centralized configuration using Pydantic Settings for type-safe
environment variable handling and validation.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class TruncationSettings(BaseSettings):
    """Default cutoffs and tolerances for every infinite sum."""

    model_config = SettingsConfigDict(
        env_prefix="PACFLAB_TRUNCATION_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    inner_len: int = Field(
        default=2**20,
        ge=1,
        description="Largest index V of the sums over v in the beta kernel",
    )
    mid_len: int = Field(
        default=512,
        ge=1,
        description="Integer nodes summed exactly in each m-sum of d_k(n)",
    )
    outer_depth: int = Field(default=4096, ge=1, description="Largest k of the outer series")
    abs_tol: float = Field(default=1e-10, gt=0.0)
    tail_span: float = Field(
        default=40.0,
        ge=0.0,
        description="Initial log-scale extent of the m-sum continuation (0 disables it)",
    )
    tail_span_max: float = Field(
        default=320.0,
        ge=0.0,
        description="Widest continuation tried while doubling the span",
    )
    tail_nodes: int = Field(default=6, ge=1, le=32)


class SzegoSettings(BaseSettings):
    """Cepstral factorization configuration."""

    model_config = SettingsConfigDict(
        env_prefix="PACFLAB_SZEGO_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    grid_size: int = Field(default=2**16, ge=8)
    density_floor: float = Field(default=1e-300, gt=0.0)
    factorization_tol: float = Field(default=5e-2, gt=0.0)
    autocov_span: int = Field(
        default=16,
        ge=1,
        description="Autocovariance terms per grid point used to synthesize a density",
    )


class VerificationSettings(BaseSettings):
    """Asymptotic windows and tolerances of the verification scenarios."""

    model_config = SettingsConfigDict(
        env_prefix="PACFLAB_VERIFY_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    dn_window: tuple[int, int] = Field(default=(200, 400))
    dn_tolerance: float = Field(default=0.05, gt=0.0)
    dn_stride: int = Field(default=20, ge=1)
    arma_window: tuple[int, int] = Field(default=(10, 60))
    arma_slack: float = Field(default=0.05, ge=0.0)
    regvar_tolerance_long: float = Field(default=0.10, gt=0.0)
    regvar_tolerance_log: float = Field(default=0.15, gt=0.0)
    regvar_tolerance_short: float = Field(default=0.10, gt=0.0)
    delta_lag: int = Field(default=500, ge=1)
    delta_tolerance: float = Field(default=0.10, gt=0.0)
    baxter_horizon: int = Field(default=5000, ge=16)
    bounded_ratio: float = Field(
        default=0.85,
        gt=0.0,
        description="Increment ratio below which partial sums count as bounded",
    )
    power_ratio: float = Field(
        default=1.15,
        gt=1.0,
        description="Increment ratio above which partial sums grow like a power",
    )
    tau_order: int = Field(default=50, ge=1)
    tau_max_generic: int = Field(default=6, ge=1)


class Settings(BaseSettings):
    """Main PACFLab configuration."""

    model_config = SettingsConfigDict(
        env_prefix="PACFLAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Application
    app_name: str = Field(default="pacflab")
    environment: Literal["development", "test", "production"] = Field(
        default="development"
    )
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(default="WARNING")
    threads: int = Field(default=1, ge=1, description="Worker cap for per-lag evaluation")

    # Nested settings
    truncation: TruncationSettings = Field(default_factory=TruncationSettings)
    szego: SzegoSettings = Field(default_factory=SzegoSettings)
    verification: VerificationSettings = Field(default_factory=VerificationSettings)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
