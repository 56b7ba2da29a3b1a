"""
Tests for the step engine, trajectory integration and drift monitoring.
"""

import numpy as np
import pytest

from semiq_core.exceptions import DomainError
from semiq_core.exceptions import DriftExceededError
from semiq_core.exceptions import PureLimitError
from semiq_dynamics import Integrator
from semiq_dynamics import IntegratorConfig
from semiq_dynamics import Method
from semiq_dynamics import Representation
from semiq_dynamics import integrate
from semiq_dynamics import monitor_invariants
from semiq_dynamics import rhs_expectations
from semiq_dynamics.integrator import MIN_RTOL
from semiq_dynamics.integrator import solver_tolerances
from semiq_maxent import ExpectationState
from semiq_maxent import Mode
from semiq_maxent import ModelParams
from semiq_maxent import MultiplierState
from semiq_maxent import evs_to_multipliers

UNIT = ModelParams()
QUASICLASSICAL = ExpectationState(x2=1.0, p2=1.0, l=0.0, a=0.0, p_a=0.5)
STRONGLY_COUPLED = ExpectationState(x2=1.0, p2=1.0, l=1.6, a=0.0, p_a=1.5)


def decoupled_solution(ev: ExpectationState, t: np.ndarray) -> np.ndarray:
    """Closed-form (x2, p2, L) of the e = 0, m = omega = 1 system."""
    s = ev.x2 + ev.p2
    d = (ev.x2 - ev.p2) * np.cos(2 * t) + ev.l * np.sin(2 * t)
    l_val = ev.l * np.cos(2 * t) - (ev.x2 - ev.p2) * np.sin(2 * t)
    return np.array([(s + d) / 2, (s - d) / 2, l_val])


class TestIntegratorConfig:
    """Test IntegratorConfig defaults and validation."""

    def test_defaults(self):
        """Test the documented defaults."""
        cfg = IntegratorConfig()
        assert cfg.method is Method.RK45
        assert cfg.rel_tol == cfg.abs_tol == 1e-10
        assert cfg.sample_stride == 1

    @pytest.mark.parametrize("field", ["rel_tol", "abs_tol", "t_end", "dt_init", "drift_tol"])
    def test_positive_fields(self, field):
        """Test tolerances and horizon must be positive."""
        with pytest.raises(ValueError):
            IntegratorConfig(**{field: 0.0})

    def test_solver_tolerances_tighter_than_requested(self):
        """Test rk45 controls local error two decades below the requested accuracy."""
        rtol, atol = solver_tolerances(IntegratorConfig())
        assert rtol == pytest.approx(1e-12)
        assert atol == pytest.approx(1e-12)

    def test_solver_rtol_floor(self):
        """Test the relative tolerance never drops below what rk45 accepts."""
        rtol, _ = solver_tolerances(IntegratorConfig(rel_tol=1e-15))
        assert rtol == MIN_RTOL


class TestStepEngine:
    """Test the Integrator step generator."""

    def test_rk4_hits_end_exactly(self):
        """Test fixed steps land on t_end."""
        engine = Integrator(IntegratorConfig(method=Method.RK4, dt_init=0.3))
        steps = list(engine.steps(lambda t, y: -y, np.array([1.0]), 0.0, 1.0))
        assert steps[0][0] == 0.0
        assert steps[-1][0] == 1.0
        assert len(steps) == 5

    def test_rk45_exponential_decay(self):
        """Test the adaptive engine on y' = -y."""
        engine = Integrator(IntegratorConfig())
        y = engine.advance(lambda t, y: -y, np.array([1.0]), 0.0, 2.0)
        assert y[0] == pytest.approx(np.exp(-2.0), rel=1e-9)

    def test_derivative_is_reported(self):
        """Test every yielded derivative matches the right-hand side."""
        engine = Integrator(IntegratorConfig(t_end=1.0))
        for _, y, f in engine.steps(lambda t, y: -2 * y, np.array([1.0, 3.0]), 0.0, 1.0):
            np.testing.assert_allclose(f, -2 * y, rtol=1e-14)

    def test_reverse_negates_flow(self):
        """Test reversed integration runs the flow backwards."""
        engine = Integrator(IntegratorConfig(), reverse=True)
        y = engine.advance(lambda t, y: -y, np.array([1.0]), 0.0, 1.0)
        assert y[0] == pytest.approx(np.e, rel=1e-9)


class TestIntegrate:
    """Test trajectory integration in both representations."""

    def test_trajectory_shape(self):
        """Test samples are aligned and times increase."""
        traj = integrate(QUASICLASSICAL, UNIT, IntegratorConfig(t_end=5.0))
        assert traj.states.shape == (len(traj), 5)
        assert np.all(np.diff(traj.times) > 0)
        assert traj.times[0] == 0.0
        assert traj.final_time == 5.0
        assert traj.k_nl is None

    def test_sample_stride(self):
        """Test striding keeps fewer samples and still ends at t_end."""
        rk4 = IntegratorConfig(method=Method.RK4, dt_init=0.01, t_end=1.0)
        full = integrate(QUASICLASSICAL, UNIT, rk4)
        strided = integrate(
            QUASICLASSICAL,
            UNIT,
            IntegratorConfig(method=Method.RK4, dt_init=0.01, t_end=1.0, sample_stride=7),
        )
        assert len(full) == 101
        assert len(strided) == 16
        assert strided.final_time == 1.0
        np.testing.assert_allclose(strided.states[-1], full.states[-1], rtol=1e-15)

    def test_multiplier_run_records_k(self):
        """Test the frozen k_nl is sqrt(I)/I_lambda of the initial state."""
        traj = integrate(
            QUASICLASSICAL, UNIT, IntegratorConfig(t_end=1.0), rep=Representation.MULTIPLIERS
        )
        assert traj.k_nl == pytest.approx(1.0 / (0.5 * np.log(3)), rel=1e-12)
        np.testing.assert_allclose(traj.evs[0], QUASICLASSICAL.as_array(), rtol=1e-12, atol=1e-15)
        assert traj.multiplier_array() is traj.states

    def test_multiplier_run_at_pure_limit(self):
        """Test the ground state cannot be integrated as multipliers."""
        ground = ExpectationState(x2=0.5, p2=0.5, p_a=0.3)
        with pytest.raises(PureLimitError):
            integrate(ground, UNIT, IntegratorConfig(t_end=1.0), rep=Representation.MULTIPLIERS)

    def test_ground_state_in_expectations(self):
        """Test the ground state integrates as expectation values without multipliers."""
        ground = ExpectationState(x2=0.5, p2=0.5, p_a=0.3)
        traj = integrate(ground, ModelParams(e=0.0), IntegratorConfig(t_end=2.0))
        assert traj.multiplier_array() is None
        assert np.all(traj.invariants["entropy"] == 0.0)

    def test_inadmissible_initial_state(self):
        """Test quantum mode rejects I < hbar^2/4."""
        with pytest.raises(DomainError):
            integrate(ExpectationState(x2=0.3, p2=0.3), UNIT, IntegratorConfig(t_end=1.0))

    def test_classical_mode_with_zero_invariant(self):
        """Test I_cl = 0 is a valid classical initial state."""
        point = ExpectationState(x2=0.5, p2=0.5, l=1.0, p_a=0.1)
        traj = integrate(point, UNIT, IntegratorConfig(t_end=10.0), mode=Mode.CLASSICAL)
        assert np.max(np.abs(traj.invariants["i_uncert"])) < 1e-9

    def test_multiplier_initial_state(self):
        """Test multiplier initial states map onto expectation values."""
        s = MultiplierState(lambda1=1.0, lambda2=1.0, lambda3=0.0, p_a=0.2)
        traj = integrate(s, UNIT, IntegratorConfig(t_end=1.0))
        assert traj.evs[0, 0] == pytest.approx(0.5 / np.tanh(1.0), rel=1e-14)

    def test_drift_guard(self):
        """Test a coarse fixed step trips the drift tolerance."""
        cfg = IntegratorConfig(method=Method.RK4, dt_init=0.5, t_end=50.0, drift_tol=1e-9)
        with pytest.raises(DriftExceededError) as exc_info:
            integrate(STRONGLY_COUPLED, UNIT, cfg)
        assert exc_info.value.quantity in {"I", "E"}

    def test_decoupled_matches_closed_form(self):
        """Test e = 0 integration against the analytic oscillation."""
        params = ModelParams(e=0.0)
        ev = ExpectationState(x2=1.5, p2=0.7, l=0.4, p_a=0.3)
        traj = integrate(ev, params, IntegratorConfig(t_end=20.0))
        expected = decoupled_solution(ev, traj.times)
        np.testing.assert_allclose(traj.evs[:, :3].T, expected, atol=1e-8)
        np.testing.assert_allclose(traj.evs[:, 3], 0.3 * traj.times, rtol=1e-9, atol=1e-12)

    def test_rk4_fourth_order(self):
        """Test the rk4 global error scales as dt^4."""
        params = ModelParams(e=0.0)
        ev = ExpectationState(x2=1.5, p2=0.7, l=0.4)
        errors = []
        for dt in (1e-2, 5e-3, 2.5e-3):
            cfg = IntegratorConfig(method=Method.RK4, dt_init=dt, t_end=10.0)
            traj = integrate(ev, params, cfg)
            exact = decoupled_solution(ev, np.array([10.0]))[:, 0]
            errors.append(np.max(np.abs(traj.evs[-1, :3] - exact)))
        for coarse, fine in zip(errors, errors[1:], strict=False):
            assert 8.0 <= coarse / fine <= 32.0

    def test_time_reversal(self):
        """Test integrating forward then backward recovers the initial state."""
        cfg = IntegratorConfig(t_end=50.0)
        forward = integrate(QUASICLASSICAL, UNIT, cfg)
        backward = integrate(forward.ev_state(-1), UNIT, cfg, reverse=True)
        np.testing.assert_allclose(
            backward.evs[-1], QUASICLASSICAL.as_array(), rtol=1e-6, atol=1e-6
        )

    def test_continuous_dependence(self):
        """Test nearby initial states stay close over short times."""
        cfg = IntegratorConfig(method=Method.RK4, dt_init=1e-3, t_end=1.0)
        delta = 1e-8
        shifted = QUASICLASSICAL.model_copy(update={"p_a": QUASICLASSICAL.p_a + delta})
        a = integrate(QUASICLASSICAL, UNIT, cfg)
        b = integrate(shifted, UNIT, cfg)
        separation = np.max(np.linalg.norm(a.evs - b.evs, axis=1))
        assert 0 < separation <= 10 * delta


class TestDualRepresentation:
    """Test multiplier-form and expectation-form runs describe the same motion."""

    @staticmethod
    def _relative_gap(initial, cfg):
        ev_run = integrate(initial, UNIT, cfg, rep=Representation.EXPECTATIONS)
        mult_run = integrate(initial, UNIT, cfg, rep=Representation.MULTIPLIERS)
        a, b = ev_run.evs[-1], mult_run.evs[-1]
        return np.linalg.norm(a - b) / np.linalg.norm(a)

    def test_quasiclassical_adaptive(self):
        """Test agreement at t = 100 with adaptive steps."""
        cfg = IntegratorConfig(t_end=100.0)
        assert self._relative_gap(QUASICLASSICAL, cfg) <= 1e-7

    def test_strong_coupling_fixed_step(self):
        """
        Test agreement at t = 20 with identical rk4 steps.

        lambda_max is about 0.33 here, so rounding differences between the two
        representations grow like exp(0.33 t): by t = 100 they reach 1e-3. Twenty
        time units are about seven Lyapunov times, which keeps the gap below 1e-7.
        """
        cfg = IntegratorConfig(method=Method.RK4, dt_init=1e-3, t_end=20.0)
        assert self._relative_gap(STRONGLY_COUPLED, cfg) <= 1e-7

    def test_mapped_flow_matches(self):
        """Test multiplier samples map onto states obeying the expectation equations."""
        traj = integrate(
            STRONGLY_COUPLED, UNIT, IntegratorConfig(t_end=2.0), rep=Representation.MULTIPLIERS
        )
        s = evs_to_multipliers(traj.ev_state(-1), UNIT)
        np.testing.assert_allclose(s.as_array(), traj.states[-1], rtol=1e-8, atol=1e-10)
        assert np.all(np.isfinite(rhs_expectations(traj.evs.T, UNIT)))


class TestMonitor:
    """Test invariant drift reporting."""

    def test_constant_trajectory(self):
        """Test the fixed point reports zero drift."""
        rest = ExpectationState(x2=1.0, p2=1.0, l=0.0, a=0.0, p_a=0.0)
        traj = integrate(rest, UNIT, IntegratorConfig(t_end=5.0))
        report = monitor_invariants(traj, UNIT)
        assert report.invariant_drift == 0.0
        assert report.energy_drift == 0.0
        assert report.quantity == "I"

    def test_multiplier_quantity(self):
        """Test multiplier runs audit I_lambda."""
        traj = integrate(
            QUASICLASSICAL, UNIT, IntegratorConfig(t_end=5.0), rep=Representation.MULTIPLIERS
        )
        report = monitor_invariants(traj, UNIT)
        assert report.quantity == "I_lambda"
        assert report.max_drift < 1e-8

    @pytest.mark.slow
    def test_decoupled_long_horizon(self):
        """Test I stays constant over t in [0, 1000] without coupling."""
        params = ModelParams(e=0.0)
        ev = ExpectationState(x2=1.5, p2=0.7, l=0.4, p_a=0.3)
        cfg = IntegratorConfig(t_end=1000.0, sample_stride=50)
        report = monitor_invariants(integrate(ev, params, cfg), params)
        assert report.i_drift <= 1e-8

    @pytest.mark.slow
    @pytest.mark.parametrize("rep", [Representation.MULTIPLIERS, Representation.EXPECTATIONS])
    def test_strong_coupling_conservation(self, rep):
        """Test invariant and E drift stay below 1e-7 over t = 1000 at the default accuracy."""
        cfg = IntegratorConfig(t_end=1000.0, sample_stride=20)
        traj = integrate(STRONGLY_COUPLED, UNIT, cfg, rep=rep)
        report = monitor_invariants(traj, UNIT)
        assert report.invariant_drift <= 1e-7
        assert report.energy_drift <= 1e-7
