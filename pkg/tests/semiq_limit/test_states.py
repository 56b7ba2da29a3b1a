"""
Tests for fixed-energy state construction and trajectory distances.
"""

import math

import pytest

from semiq_core.exceptions import DomainError
from semiq_core.exceptions import UnreachableRegimeError
from semiq_dynamics import IntegratorConfig
from semiq_limit import ReductionPattern
from semiq_limit import invariant_for_relative_energy
from semiq_limit import paired_distance
from semiq_limit import state_with_invariant
from semiq_maxent import ExpectationState
from semiq_maxent import ModelParams
from semiq_maxent import energy
from semiq_maxent import invariant_i

UNIT = ModelParams()
BASE = ExpectationState(x2=1.0, p2=1.0, l=0.5, a=0.0, p_a=0.5)


class TestCorrelationPattern:
    """Test the pattern that only moves <L>."""

    def test_hits_target(self):
        """Test I and E after the move."""
        state = state_with_invariant(BASE, 0.5, ReductionPattern.CORRELATION, UNIT)
        assert math.isclose(invariant_i(state), 0.5, rel_tol=1e-14)
        assert energy(state, UNIT) == energy(BASE, UNIT)
        assert (state.x2, state.p2, state.a, state.p_a) == (BASE.x2, BASE.p2, BASE.a, BASE.p_a)

    def test_keeps_sign_of_correlation(self):
        """Test a negative <L> stays negative."""
        base = BASE.model_copy(update={"l": -0.5})
        state = state_with_invariant(base, 0.2, ReductionPattern.CORRELATION, UNIT)
        assert state.l < 0

    def test_classical_end(self):
        """Test I = 0 gives l = 2 sqrt(x2 p2)."""
        state = state_with_invariant(BASE, 0.0, ReductionPattern.CORRELATION, UNIT)
        assert state.l == 2.0
        assert invariant_i(state) == 0.0

    def test_target_above_product(self):
        """Test I > x2 p2 cannot be reached by correlation alone."""
        with pytest.raises(DomainError):
            state_with_invariant(BASE, 1.5, ReductionPattern.CORRELATION, UNIT)

    def test_negative_target(self):
        """Test negative I is rejected."""
        with pytest.raises(DomainError):
            state_with_invariant(BASE, -0.1, ReductionPattern.CORRELATION, UNIT)


class TestProportionalPattern:
    """Test the pattern that scales the quantum moments."""

    def test_hits_target_at_fixed_energy(self):
        """Test scaling by sqrt(I/I0) and re-solving P_A."""
        base = BASE.model_copy(update={"l": 0.0})
        state = state_with_invariant(base, 0.25, ReductionPattern.PROPORTIONAL, UNIT)
        assert math.isclose(state.x2, 0.5)
        assert math.isclose(state.p_a, math.sqrt(1.25), rel_tol=1e-14)
        assert math.isclose(invariant_i(state), 0.25, rel_tol=1e-14)
        assert math.isclose(energy(state, UNIT), energy(base, UNIT), rel_tol=1e-14)

    def test_unreachable(self):
        """Test raising I beyond the energy budget."""
        base = BASE.model_copy(update={"l": 0.0})
        with pytest.raises(UnreachableRegimeError):
            state_with_invariant(base, 4.0, ReductionPattern.PROPORTIONAL, UNIT)

    def test_needs_mixed_base(self):
        """Test a base with I = 0 cannot be scaled."""
        base = BASE.model_copy(update={"l": 2.0})
        with pytest.raises(DomainError):
            state_with_invariant(base, 0.5, ReductionPattern.PROPORTIONAL, UNIT)


class TestRelativeEnergy:
    """Test I from a target E_r."""

    def test_inverts_definition(self):
        """Test E_r = |E| / (sqrt(I) omega_q) round trip."""
        i_val = invariant_for_relative_energy(3.0, 1.5, 0.5)
        assert math.isclose(1.5 / (math.sqrt(i_val) * 0.5), 3.0, rel_tol=1e-14)

    def test_rejects_non_positive(self):
        """Test E_r must be positive."""
        with pytest.raises(DomainError):
            invariant_for_relative_energy(0.0, 1.0, 1.0)


class TestPairedDistance:
    """Test the sup-norm distance between two EV trajectories."""

    def test_identical_states(self):
        """Test distance zero for identical initial states."""
        cfg = IntegratorConfig(t_end=5.0)
        assert paired_distance(BASE, BASE, UNIT, cfg) == 0.0

    def test_distance_bounded_below_by_initial_gap(self):
        """Test the sup includes t = 0."""
        other = BASE.model_copy(update={"l": 0.0})
        cfg = IntegratorConfig(t_end=1.0)
        gap = 0.5 / math.sqrt(1.0 + 1.0 + 0.25 + 0.25)
        assert paired_distance(BASE, other, UNIT, cfg) >= gap
