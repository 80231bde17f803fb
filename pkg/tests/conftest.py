"""
PACFLab Test Fixtures

Shared fixtures for all test modules.
"""

from collections.abc import Generator

import pytest
import structlog

from pacflab.coeffs.models import FarimaSpec, TruncationPolicy
from pacflab.core.config import Settings, get_settings


@pytest.fixture
def test_settings() -> Settings:
    """Create test settings with test values."""
    return Settings(environment="test", log_level="ERROR")


@pytest.fixture
def clean_settings() -> Generator[None, None, None]:
    """Drop the cached settings before and after a test that changes the environment."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def reset_logging() -> Generator[None, None, None]:
    """Restore structlog defaults so later tests never write to a closed capture stream."""
    yield
    structlog.reset_defaults()
    structlog.contextvars.clear_contextvars()


@pytest.fixture
def policy() -> TruncationPolicy:
    """Default truncation policy."""
    return TruncationPolicy.from_settings()


@pytest.fixture
def small_policy() -> TruncationPolicy:
    """Shorter m-sums for fast representation tests."""
    return TruncationPolicy.from_settings(mid_len=128)


@pytest.fixture
def long_memory_spec() -> FarimaSpec:
    """FARIMA(0, 0.3, 0)."""
    return FarimaSpec(d=0.3)


@pytest.fixture
def antipersistent_spec() -> FarimaSpec:
    """FARIMA(0, -0.3, 0)."""
    return FarimaSpec(d=-0.3)


@pytest.fixture
def arma11_spec() -> FarimaSpec:
    """ARMA(1,1) with Phi = 1 - 0.5z and Theta = 1 + 0.4z."""
    return FarimaSpec(phi=(1.0, -0.5), theta=(1.0, 0.4))


@pytest.fixture
def farima111_spec() -> FarimaSpec:
    """FARIMA(1, -0.3, 1) with Phi = 1 - 0.5z and Theta = 1 + 0.4z."""
    return FarimaSpec(d=-0.3, phi=(1.0, -0.5), theta=(1.0, 0.4))
