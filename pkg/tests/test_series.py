"""
Tests for PACFLab Series Utilities

Tests for power-series arithmetic and tail integrals.
"""

import math

import numpy as np
import pytest

from pacflab.core.series import (
    binomial_series,
    compensated_dot,
    geometric_length,
    power_tail_integral,
    rational_filter,
    series_exp,
    series_reciprocal,
)


class TestSeriesArithmetic:
    """Tests for the power-series helpers."""

    def test_binomial_series(self):
        """Test (1 - z)^0.3 = 1 - 0.3z - 0.105z^2 + ..."""
        np.testing.assert_allclose(binomial_series(-0.3, 2), [1.0, -0.3, -0.105])
        np.testing.assert_array_equal(binomial_series(1.0, 4), np.ones(5))

    def test_rational_filter(self):
        """Test the impulse response of (1 + 0.4z)/(1 - 0.5z)."""
        impulse = np.eye(1, 4).ravel()
        np.testing.assert_allclose(rational_filter([1.0, 0.4], [1.0, -0.5], impulse), [1.0, 0.9, 0.45, 0.225])

    def test_series_exp(self):
        """Test exp(z) and exp(-log(1 - z/2)) = 1/(1 - z/2)."""
        n = np.arange(6)
        np.testing.assert_allclose(series_exp(np.array([0.0, 1.0]), 5), [1.0 / math.factorial(k) for k in n])
        k = np.arange(1, 40)
        g = np.concatenate(([0.0], 0.5**k / k))
        np.testing.assert_allclose(series_exp(g, 5), 0.5**n, rtol=1e-14)

    def test_series_reciprocal(self):
        """Test 1/(1 - z/2) and its negation."""
        np.testing.assert_allclose(series_reciprocal(np.array([1.0, -0.5]), 3), [1.0, 0.5, 0.25, 0.125])
        np.testing.assert_allclose(series_reciprocal(np.array([1.0, -0.5]), 1, sign=-1.0), [-1.0, -0.5])

    def test_compensated_dot(self):
        """Test cancellation does not lose the small term."""
        x = np.array([1e16, 1.0, -1e16])
        assert compensated_dot(x, np.ones(3)) == 1.0


class TestTailEstimates:
    """Tests for power_tail_integral and geometric_length."""

    def test_pure_power(self):
        """Test the integral of t^-2 over [1, inf) is 1."""
        assert power_tail_integral(2.0, 0.0, [0.0], 1.0)[0] == pytest.approx(1.0)

    def test_shifted_product(self):
        """Test the integral of 1/(t(t + 1)) over [1, inf) is log 2."""
        assert power_tail_integral(1.0, 1.0, [1.0], 1.0)[0] == pytest.approx(math.log(2.0))

    def test_divergent(self):
        """Test p + r <= 1 is rejected."""
        with pytest.raises(ValueError):
            power_tail_integral(0.5, 0.5, [1.0], 1.0)

    def test_geometric_length(self):
        """Test the floor, the double-precision length and the cap."""
        assert geometric_length(0.0) == 64
        assert geometric_length(0.5) == 64
        assert geometric_length(0.9) == math.ceil(-40.0 / math.log(0.9))
        assert geometric_length(0.9, cap=100) == 100
