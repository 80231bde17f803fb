"""
Tests for PACFLab Szego Module

Tests for density synthesis, cepstral factorization and Baxter's condition.
"""

import math

import numpy as np
import pytest
from scipy import special

from pacflab.coeffs.generators import autocov_from_ma, farima_autocov, farima_ma_coeffs
from pacflab.coeffs.models import CoefficientSequence, FarimaSpec, SequenceKind
from pacflab.core.errors import DomainError, FactorizationError, NotPositiveDefiniteError
from pacflab.szego.factorization import (
    baxter_condition,
    density_from_autocov,
    factorize,
    log_coefficients,
    power_law_autocov,
)
from pacflab.szego.models import SpectralGrid


@pytest.fixture
def white_gamma() -> CoefficientSequence:
    """gamma = (1, 0, 0, 0)."""
    return CoefficientSequence(values=[1.0, 0.0, 0.0, 0.0], kind=SequenceKind.AUTOCOV)


class TestSpectralGrid:
    """Tests for SpectralGrid."""

    def test_half_bin_offset(self):
        """Test theta = 0 is not a grid point."""
        grid = SpectralGrid(size=8, values=np.ones(8))
        assert np.min(np.abs(grid.theta)) == pytest.approx(math.pi / 8)
        assert grid.theta[0] == pytest.approx(-math.pi + math.pi / 8)

    def test_rejects_non_power_of_two(self):
        """Test grid sizes must be powers of two."""
        with pytest.raises(ValueError):
            SpectralGrid(size=6, values=np.ones(6))

    def test_rejects_negative_samples(self):
        """Test densities must be nonnegative."""
        values = np.ones(4)
        values[1] = -1.0
        with pytest.raises(ValueError):
            SpectralGrid(size=4, values=values)


class TestDensityFromAutocov:
    """Tests for density_from_autocov."""

    def test_white_noise(self, white_gamma):
        """Test white noise has the constant density 1/(2 pi)."""
        grid = density_from_autocov(white_gamma, 64)
        np.testing.assert_allclose(grid.values, 1.0 / (2.0 * math.pi), rtol=1e-14)
        assert grid.floored == 0

    def test_ar1_density(self):
        """Test the AR(1) density 1/(2 pi |1 - 0.5 e^{i theta}|^2)."""
        grid = density_from_autocov(farima_autocov(FarimaSpec(phi=(1.0, -0.5)), 10), 256)
        expected = 1.0 / (2.0 * math.pi * np.abs(1.0 - 0.5 * np.exp(1j * grid.theta)) ** 2)
        np.testing.assert_allclose(grid.values, expected, rtol=1e-10)

    def test_long_memory_density(self, long_memory_spec):
        """Test FARIMA(0, 0.3, 0) matches |1 - e^{i theta}|^(-2d)/(2 pi) away from zero."""
        grid = density_from_autocov(farima_autocov(long_memory_spec, 10), 4096)
        theta = grid.theta
        expected = np.abs(1.0 - np.exp(1j * theta)) ** -0.6 / (2.0 * math.pi)
        away = np.abs(theta) > 0.1
        np.testing.assert_allclose(grid.values[away], expected[away], rtol=1e-6)

    def test_power_law_density_at_zero(self):
        """Test gamma_n = (1 + n)^-1.6 has Delta(0) = (2 zeta(1.6) - 1)/(2 pi)."""
        grid = density_from_autocov(power_law_autocov(-0.3, 10), 2**16)
        expected = (2.0 * special.zeta(1.6, 1.0) - 1.0) / (2.0 * math.pi)
        assert grid.value_near(0.0) == pytest.approx(expected, rel=1e-2)

    def test_not_positive_definite(self):
        """Test a covariance with a negative density is rejected."""
        gamma = CoefficientSequence(values=[1.0, 0.9], kind=SequenceKind.AUTOCOV)
        with pytest.raises(NotPositiveDefiniteError):
            density_from_autocov(gamma, 64)

    def test_floor_counts_zeros(self):
        """Test samples below the floor are raised and counted."""
        gamma = CoefficientSequence(values=[1.0, 0.5], kind=SequenceKind.AUTOCOV)
        grid = density_from_autocov(gamma, 64, floor=0.01)
        assert grid.floored > 0
        assert grid.minimum == pytest.approx(0.01)

    def test_rejects_other_kinds(self, long_memory_spec):
        """Test only autocovariances are accepted."""
        with pytest.raises(DomainError):
            density_from_autocov(farima_ma_coeffs(long_memory_spec, 5), 64)


class TestFactorize:
    """Tests for factorize and log_coefficients."""

    def test_constant_density(self, white_gamma):
        """Test the constant density factorizes to c = (1, 0, ...) and a = (-1, 0, ...)."""
        result = factorize(density_from_autocov(white_gamma, 64), 10)
        np.testing.assert_allclose(result.c.values, [1.0] + [0.0] * 10, atol=1e-13)
        np.testing.assert_allclose(result.a.values, [-1.0] + [0.0] * 10, atol=1e-13)
        assert result.c0_sq == pytest.approx(1.0)
        assert result.residual < 1e-12

    def test_ar1_log_coefficients(self):
        """Test the cepstrum of AR(1) is 0.5^k/k."""
        grid = density_from_autocov(farima_autocov(FarimaSpec(phi=(1.0, -0.5)), 10), 256)
        log_coeffs = log_coefficients(grid)
        k = np.arange(1, 20)
        np.testing.assert_allclose(log_coeffs[1:20], 0.5**k / k, atol=1e-12)
        assert log_coeffs[0] == pytest.approx(0.0, abs=1e-12)

    def test_long_memory_coefficients(self, long_memory_spec):
        """Test the factorized FARIMA(0, 0.3, 0) density gives c_1 = 0.3."""
        grid = density_from_autocov(farima_autocov(long_memory_spec, 10), 2**16)
        result = factorize(grid, 20)
        assert result.c.values[1] == pytest.approx(0.3, abs=1e-3)
        assert result.a.values[1] == pytest.approx(0.3, abs=1e-3)
        assert result.c0_sq == pytest.approx(1.0, abs=1e-3)

    def test_autocov_round_trip(self, arma11_spec):
        """Test the factorized MA coefficients reproduce gamma_0..gamma_50."""
        gamma = farima_autocov(arma11_spec, 60)
        result = factorize(density_from_autocov(gamma, 1024), 511)
        rebuilt = autocov_from_ma(result.c, 50, 400)
        np.testing.assert_allclose(rebuilt.values, gamma.values[:51], rtol=1e-6, atol=1e-6 * gamma.values[0])

    def test_residual_shrinks_with_grid(self):
        """Test doubling the grid lowers the residual on a smooth density."""
        gamma = farima_autocov(FarimaSpec(phi=(1.0, -0.9)), 10)
        residuals = [
            factorize(density_from_autocov(gamma, size), size // 2 - 1).residual for size in (16, 32, 64, 128)
        ]
        assert np.all(np.diff(residuals) < 0.0)

    @pytest.mark.slow
    def test_boundary_power_law_coefficients(self):
        """Test gamma_n = 1/(1 + n) gives c_n n sqrt(2 log n) close to 1."""
        n = 1000
        result = factorize(density_from_autocov(power_law_autocov(0.0, 10), 2**16), n)
        assert result.c.values[n] * n * math.sqrt(2.0 * math.log(n)) == pytest.approx(1.0, rel=0.15)

    def test_grid_too_small(self, white_gamma):
        """Test n_max must stay below half the grid."""
        with pytest.raises(DomainError):
            factorize(density_from_autocov(white_gamma, 16), 8)

    def test_tolerance_enforced(self):
        """Test a truncated MA polynomial that misses the density raises."""
        grid = density_from_autocov(farima_autocov(FarimaSpec(phi=(1.0, -0.9)), 10), 256)
        with pytest.raises(FactorizationError) as excinfo:
            factorize(grid, 2, tol=1e-6)
        assert excinfo.value.residual > 1e-6


class TestBaxterCondition:
    """Tests for baxter_condition."""

    def test_arma_satisfies(self):
        """Test AR(1) has summable covariance and a positive density."""
        gamma = farima_autocov(FarimaSpec(phi=(1.0, -0.5)), 10)
        report = baxter_condition(gamma, density_from_autocov(gamma, 256), horizon=4096)
        assert report.summable
        assert report.satisfied
        assert report.abs_sum == pytest.approx(1.0 / 0.75 * 2.0, rel=1e-10)

    def test_long_memory_fails(self, long_memory_spec):
        """Test d = 0.3 has a non-summable covariance."""
        gamma = farima_autocov(long_memory_spec, 10)
        report = baxter_condition(gamma, density_from_autocov(gamma, 1024), horizon=4096)
        assert not report.summable
        assert not report.satisfied
