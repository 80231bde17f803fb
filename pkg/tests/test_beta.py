"""
Tests for PACFLab Beta Module

Tests for the beta kernels, their continuation and the O(1/n) diagnostic.
"""

import math

import numpy as np
import pytest

from pacflab.beta.kernels import (
    beta_minus,
    beta_standard,
    farima_beta,
    farima_extension,
    fit_extension,
    o1n_diagnostic,
)
from pacflab.beta.models import BetaVariant, ExtensionKind
from pacflab.coeffs.generators import farima_ar_coeffs, farima_autocov, farima_ma_coeffs, psi_phi_coeffs
from pacflab.coeffs.models import (
    CoefficientSequence,
    DecayClass,
    DecayKind,
    FarimaSpec,
    SequenceKind,
    TruncationPolicy,
)
from pacflab.coeffs.registry import FarimaModel
from pacflab.core.errors import DomainError
from pacflab.szego.factorization import density_from_autocov, factorize


class TestBetaStandard:
    """Tests for beta_standard."""

    def test_white_noise(self, policy):
        """Test white noise gives beta = (-1, 0, 0, ...)."""
        spec = FarimaSpec()
        beta = beta_standard(farima_ma_coeffs(spec, 0), farima_ar_coeffs(spec, 0), 10, policy)
        np.testing.assert_array_equal(beta.values, [-1.0] + [0.0] * 10)
        assert beta.variant == BetaVariant.STANDARD

    def test_ar1_kernel(self, policy):
        """Test AR(1) with phi = 0.5 has beta = (-0.75, 0.5, 0, ...)."""
        spec = FarimaSpec(phi=(1.0, -0.5))
        beta = beta_standard(farima_ma_coeffs(spec, 0), farima_ar_coeffs(spec, 0), 5, policy)
        np.testing.assert_allclose(beta.values, [-0.75, 0.5, 0.0, 0.0, 0.0, 0.0], atol=1e-15)
        assert beta.decay.kind == DecayKind.EXPONENTIAL
        assert beta.extension.is_zero

    def test_matches_closed_form(self, long_memory_spec, policy):
        """Test the summed kernel agrees with the closed form for d = 0.3."""
        c = farima_ma_coeffs(long_memory_spec, 0)
        a = farima_ar_coeffs(long_memory_spec, 0)
        beta = beta_standard(c, a, 20, policy)
        expected = farima_beta(long_memory_spec, np.arange(21))
        np.testing.assert_allclose(beta.values, expected, atol=1e-8)
        assert beta.decay.exponent == pytest.approx(1.0)

    def test_reports_tail_bounds(self, long_memory_spec, policy):
        """Test power-law sums settle within the tolerance target."""
        c = farima_ma_coeffs(long_memory_spec, 0)
        a = farima_ar_coeffs(long_memory_spec, 0)
        beta = beta_standard(c, a, 20, policy)
        assert beta.tail_bound.shape == beta.values.shape
        assert beta.within_tolerance

    def test_refinement_within_tail_bound(self, long_memory_spec, policy):
        """Test a longer inner sum moves beta by less than the coarse tail bound."""
        c = farima_ma_coeffs(long_memory_spec, 0)
        a = farima_ar_coeffs(long_memory_spec, 0)
        coarse = beta_standard(c, a, 20, TruncationPolicy.from_settings(inner_len=2048))
        fine = beta_standard(c, a, 20, policy)
        assert np.all(np.abs(fine.values - coarse.values) <= coarse.tail_bound + policy.abs_tol)

    @pytest.mark.slow
    def test_origin_matches_direct_sum(self, long_memory_spec, policy):
        """Test beta(0) against 10^7 direct terms with Richardson extrapolation."""
        d = long_memory_spec.d
        v = np.arange(1, 10_000_000, dtype=np.float64)
        c = np.concatenate(([1.0], np.cumprod((v - 1.0 + d) / v)))
        a = -np.concatenate(([1.0], np.cumprod((v - 1.0 - d) / v)))
        terms = c * a
        half = float(np.sum(terms[: len(terms) // 2]))
        full = float(np.sum(terms))
        oracle = 2.0 * full - half
        beta = beta_standard(farima_ma_coeffs(long_memory_spec, 0), farima_ar_coeffs(long_memory_spec, 0), 5, policy)
        assert beta.values[0] == pytest.approx(oracle, abs=max(1e-8, float(beta.tail_bound[0])))
        assert oracle == pytest.approx(float(farima_beta(long_memory_spec, [0])[0]), abs=1e-8)

    @pytest.mark.slow
    def test_factorized_route_agrees(self, long_memory_spec):
        """Test beta from cepstral coefficients matches the closed form for n <= 100."""
        grid = density_from_autocov(farima_autocov(long_memory_spec, 10), 2**16)
        result = factorize(grid, 2**15 - 1)
        c = CoefficientSequence(values=result.c.values, kind=SequenceKind.MA, decay=DecayClass.power_law(0.7))
        a = CoefficientSequence(values=result.a.values, kind=SequenceKind.AR, decay=DecayClass.power_law(1.3))
        beta = beta_standard(c, a, 100, TruncationPolicy.from_settings(inner_len=2**14))
        expected = farima_beta(long_memory_spec, np.arange(101))
        np.testing.assert_allclose(beta.values, expected, atol=1e-4)

    def test_fitted_extension(self, long_memory_spec, policy):
        """Test a power-law kernel without explicit extension gets a fitted one."""
        c = farima_ma_coeffs(long_memory_spec, 0)
        a = farima_ar_coeffs(long_memory_spec, 0)
        beta = beta_standard(c, a, 128, policy)
        assert beta.extension.kind == ExtensionKind.POWER_LAW
        assert beta.extension.exponent == pytest.approx(1.0, abs=0.01)

    def test_requires_ma_and_ar(self, long_memory_spec, policy):
        """Test swapped inputs are rejected."""
        c = farima_ma_coeffs(long_memory_spec, 0)
        a = farima_ar_coeffs(long_memory_spec, 0)
        with pytest.raises(DomainError):
            beta_standard(a, c, 5, policy)


class TestBetaMinus:
    """Tests for beta_minus."""

    def test_matches_closed_form(self, antipersistent_spec, policy):
        """Test beta_- equals the closed-form kernel for d = -0.3."""
        psi, phi = psi_phi_coeffs(antipersistent_spec, 0)
        beta = beta_minus(psi, phi, 20, policy)
        expected = farima_beta(antipersistent_spec, np.arange(21))
        np.testing.assert_allclose(beta.values, expected, atol=1e-8)
        assert beta.variant == BetaVariant.MINUS

    def test_negative_at_large_lags(self, antipersistent_spec, policy):
        """Test beta_-(n) < 0 for n >= 50 when d < 0."""
        beta = FarimaModel(antipersistent_spec).beta(400, policy)
        assert beta.variant == BetaVariant.MINUS
        assert np.all(beta.values[50:] < 0.0)

    def test_requires_psi_and_phi(self, antipersistent_spec, policy):
        """Test MA/AR inputs are rejected."""
        c = farima_ma_coeffs(antipersistent_spec, 0)
        a = farima_ar_coeffs(antipersistent_spec, 0)
        with pytest.raises(DomainError):
            beta_minus(c, a, 5, policy)

    def test_model_picks_variant(self, antipersistent_spec, long_memory_spec, policy):
        """Test FARIMA models use beta_- exactly when d < 0."""
        assert FarimaModel(antipersistent_spec).beta(5, policy).variant == BetaVariant.MINUS
        assert FarimaModel(long_memory_spec).beta(5, policy).variant == BetaVariant.STANDARD


class TestClosedForm:
    """Tests for farima_beta and farima_extension."""

    @pytest.mark.parametrize("d", [0.3, -0.3])
    def test_limit_constant(self, d):
        """Test n beta(n) -> sin(pi d)/pi."""
        n = 100_000
        value = float(farima_beta(FarimaSpec(d=d), [n])[0])
        assert n * value == pytest.approx(math.sin(math.pi * d) / math.pi, rel=1e-4)

    def test_weights_sum_to_one(self, farima111_spec):
        """Test the closed-form weights sum to one."""
        extension = farima_extension(farima111_spec)
        assert sum(extension.weights) == pytest.approx(1.0, abs=1e-12)

    def test_arma_integer_values(self):
        """Test the d = 0 closed form reproduces the AR(1) kernel."""
        values = farima_beta(FarimaSpec(phi=(1.0, -0.5)), np.arange(4))
        np.testing.assert_allclose(values, [-0.75, 0.5, 0.0, 0.0], atol=1e-15)

    def test_at_uses_table_then_extension(self, long_memory_spec, policy):
        """Test BetaSequence.at reads the table at integers and the continuation elsewhere."""
        beta = FarimaModel(long_memory_spec).beta(10, policy)
        assert beta.at([3.0])[0] == beta.values[3]
        x = 50.5
        expected = math.sin(0.3 * math.pi) / math.pi / (x - 0.3)
        assert beta.at([x])[0] == pytest.approx(expected, rel=1e-12)


class TestFitExtension:
    """Tests for fit_extension."""

    def test_recovers_power_law(self):
        """Test a pure power law is continued exactly."""
        values = 2.0 * np.arange(1, 202, dtype=float) ** -1.5
        values = np.concatenate(([1.0], values[:-1]))
        extension = fit_extension(values)
        assert extension.kind == ExtensionKind.POWER_LAW
        assert extension.exponent == pytest.approx(1.5, rel=1e-3)

    def test_short_table(self):
        """Test short tables get no continuation."""
        assert fit_extension(np.ones(10)).is_zero

    def test_sign_change(self):
        """Test a sign change between the anchors disables the continuation."""
        values = np.ones(200)
        values[-1] = -1.0
        assert fit_extension(values).is_zero


class TestO1nDiagnostic:
    """Tests for o1n_diagnostic."""

    def test_farima_satisfies_condition(self, long_memory_spec, policy):
        """Test n sum_v |c_v a_{n+v}| stays bounded for FARIMA(0, 0.3, 0)."""
        c = farima_ma_coeffs(long_memory_spec, 0)
        a = farima_ar_coeffs(long_memory_spec, 0)
        report = o1n_diagnostic(c, a, 200, policy)
        assert report.finite
        assert report.supremum < 1.0
        assert report.last_value == pytest.approx(math.sin(0.3 * math.pi) / math.pi * 200 / 199.7, rel=0.05)
