"""
Unit tests for the stable relations in hbar * I_lambda.
"""

import math

import numpy as np
import pytest

from semiq_core.exceptions import DomainError
from semiq_maxent.special import entropy_from_ilambda
from semiq_maxent.special import ilambda_condition
from semiq_maxent.special import ilambda_from_i
from semiq_maxent.special import lambda0
from semiq_maxent.special import pure_threshold
from semiq_maxent.special import purity
from semiq_maxent.special import spectral_entropy
from semiq_maxent.special import t_of_ilambda


class TestTOfILambda:
    """Test T(I_lambda) = (hbar/2) coth(hbar I_lambda)."""

    def test_exact_value(self):
        """Test e^{2 hbar I_lambda} = 3 gives T = 1."""
        assert t_of_ilambda(math.log(3) / 2, 1.0) == pytest.approx(1.0, rel=1e-14)

    def test_ground_state_limit(self):
        """Test large hbar I_lambda returns hbar/2 without overflow."""
        assert abs(t_of_ilambda(1e6, 1.0) - 0.5) <= 1e-12
        assert t_of_ilambda(np.inf, 2.0) == 1.0

    def test_hbar_zero(self):
        """Test the classical limit 1/(2 I_lambda)."""
        assert t_of_ilambda(2.0, 0.0) == 0.25

    def test_small_argument_has_no_cancellation(self):
        """Test T approaches 1/(2 I_lambda) for tiny hbar."""
        assert t_of_ilambda(2.0, 1e-9) == pytest.approx(0.25, rel=1e-12)

    def test_array_input(self):
        """Test vectorized evaluation keeps the shape."""
        out = t_of_ilambda(np.array([math.log(3) / 2, 1e6]), 1.0)
        assert isinstance(out, np.ndarray)
        assert out.shape == (2,)
        np.testing.assert_allclose(out, [1.0, 0.5], rtol=1e-12)

    @pytest.mark.parametrize("value", [0.0, -1.0, float("nan")])
    def test_non_positive_raises(self, value):
        """Test invalid I_lambda is a domain error."""
        with pytest.raises(DomainError):
            t_of_ilambda(value, 1.0)

    def test_negative_hbar_raises(self):
        """Test negative hbar is a domain error."""
        with pytest.raises(DomainError):
            t_of_ilambda(1.0, -1.0)


class TestLambda0:
    """Test the normalization multiplier."""

    def test_log_two(self):
        """Test hbar I_lambda = ln 2 gives -ln(3/2)."""
        assert lambda0(math.log(2), 1.0) == pytest.approx(-math.log(1.5), rel=1e-14)

    def test_small_argument(self):
        """Test the series regime e^z - e^-z ~ 2z."""
        assert lambda0(0.01, 1.0) == pytest.approx(-math.log(2 * math.sinh(0.01)), rel=1e-12)
        assert lambda0(0.01, 1.0) == pytest.approx(3.912, abs=1e-3)

    def test_asymptote(self):
        """Test lambda0 approaches -hbar I_lambda for large arguments."""
        assert lambda0(1e4, 1.0) == -1e4
        assert lambda0(50.0, 1.0) == pytest.approx(-50.0, rel=1e-15)

    def test_zero_hbar_raises(self):
        """Test lambda0 needs hbar > 0."""
        with pytest.raises(DomainError):
            lambda0(1.0, 0.0)


class TestILambdaFromI:
    """Test the inverse relation I -> I_lambda."""

    def test_unit_invariant(self):
        """Test I = 1, hbar = 1 gives ln(3)/2."""
        assert ilambda_from_i(1.0, 1.0) == pytest.approx(0.5 * math.log(3), rel=1e-14)

    def test_hbar_zero(self):
        """Test the classical relation 1/(2 sqrt(I))."""
        assert ilambda_from_i(4.0, 0.0) == 0.25

    def test_inverse_of_t(self):
        """Test T(ilambda_from_i(I))^2 reproduces I across both branches."""
        hbar = 1.0
        values = np.geomspace(0.25 * (1 + 1e-6), 1e6, 200)
        il = ilambda_from_i(values, hbar)
        np.testing.assert_allclose(np.square(t_of_ilambda(il, hbar)), values, rtol=1e-9)

    def test_diverges_at_floor(self):
        """Test I_lambda grows without bound as I approaches hbar^2/4."""
        gaps = [1e-2, 1e-4, 1e-6, 1e-8]
        il = [ilambda_from_i(0.25 * (1 + g), 1.0) for g in gaps]
        assert all(b > a for a, b in zip(il, il[1:], strict=False))

    def test_below_floor_raises(self):
        """Test I <= hbar^2/4 is outside the domain."""
        with pytest.raises(DomainError):
            ilambda_from_i(0.25, 1.0)
        with pytest.raises(DomainError):
            ilambda_from_i(0.0, 0.0)

    def test_second_order_in_hbar(self):
        """Test |I_lambda - 1/(2 sqrt(I))| shrinks like hbar^2."""
        errors = [abs(ilambda_from_i(1.0, h) - 0.5) for h in (1e-1, 1e-2, 1e-3)]
        orders = [math.log10(a / b) for a, b in zip(errors, errors[1:], strict=False)]
        for order in orders:
            assert 1.9 <= order <= 2.1
        # Richardson combination removes the leading term
        richardson = (100 * ilambda_from_i(1.0, 1e-2) - ilambda_from_i(1.0, 1e-1)) / 99
        assert abs(richardson - 0.5) < errors[1]

    def test_pure_threshold(self):
        """Test the pure threshold sits just above hbar^2/4."""
        assert pure_threshold(2.0) == pytest.approx(1.0, rel=1e-11)
        assert pure_threshold(2.0) > 1.0


class TestILambdaCondition:
    """Test the sensitivity of I_lambda to relative changes of I."""

    def test_classical_limit(self):
        """Test the factor is 1/2 at hbar = 0 and for small z."""
        assert ilambda_condition(2.0, 0.0) == 0.5
        assert ilambda_condition(1e-6, 1.0) == pytest.approx(0.5, rel=1e-9)

    def test_matches_log_derivative(self):
        """Test sinh(2z)/(4z) against a central difference of ilambda_from_i at z = 3."""
        il, hbar = 1.5, 2.0
        i_val = t_of_ilambda(il, hbar) ** 2
        h = 1e-6
        up = ilambda_from_i(i_val * (1 + h), hbar)
        down = ilambda_from_i(i_val * (1 - h), hbar)
        slope = (math.log(down) - math.log(up)) / (math.log1p(h) - math.log1p(-h))
        assert ilambda_condition(il, hbar) == pytest.approx(slope, rel=1e-5)
        assert ilambda_condition(il, hbar) == pytest.approx(math.sinh(6.0) / 12.0, rel=1e-14)

    def test_grows_toward_pure_floor(self):
        """Test the factor near hbar I_lambda = 9 is close to 1e6 and stays finite far out."""
        assert 5e5 < ilambda_condition(9.0, 1.0) < 2e6
        values = ilambda_condition(np.array([1.0, 1e4]), 1.0)
        assert np.all(np.isfinite(values))


class TestEntropyAndPurity:
    """Test entropy, spectral entropy and purity in closed form."""

    def test_entropy_matches_spectral(self):
        """Test lambda0 + 2 I_lambda T equals -sum p ln p on [1e-3, 30]."""
        z = np.geomspace(1e-3, 30.0, 300)
        np.testing.assert_allclose(
            entropy_from_ilambda(z, 1.0), spectral_entropy(z, 1.0), rtol=1e-9, atol=1e-9
        )

    def test_pure_limit(self):
        """Test S -> 0 and purity -> 1 for large hbar I_lambda."""
        assert entropy_from_ilambda(1e4, 1.0) == 0.0
        assert spectral_entropy(np.inf, 1.0) == 0.0
        assert purity(1e4, 1.0) == 1.0

    def test_monotone(self):
        """Test purity rises and entropy falls as hbar I_lambda grows."""
        z = np.geomspace(1e-2, 10.0, 100)
        assert np.all(np.diff(purity(z, 1.0)) >= 0)
        assert np.all(np.diff(entropy_from_ilambda(z, 1.0)) <= 0)

    def test_entropy_non_negative(self):
        """Test entropy never drops below zero."""
        z = np.geomspace(1e-3, 1e3, 400)
        assert np.all(entropy_from_ilambda(z, 1.0) >= 0)
