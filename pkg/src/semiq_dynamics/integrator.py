"""
Step engine and trajectory integration with invariant auditing.
"""

import math
from collections.abc import Callable
from collections.abc import Iterator

import numpy as np
from numpy.typing import NDArray
from scipy.integrate import RK45

from semiq_core.exceptions import DriftExceededError
from semiq_core.exceptions import StepUnderflowError
from semiq_core.logging import LoggingMixin
from semiq_maxent.algebra import check_admissible
from semiq_maxent.algebra import energy_terms
from semiq_maxent.algebra import evs_to_multipliers
from semiq_maxent.algebra import invariant_columns
from semiq_maxent.algebra import k_nl as k_nl_of
from semiq_maxent.algebra import multipliers_to_evs
from semiq_maxent.algebra import uncertainty_invariant
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams
from semiq_maxent.models import MultiplierState

from .models import IntegratorConfig
from .models import Method
from .models import Representation
from .models import Trajectory
from .rhs import rhs_expectations
from .rhs import rhs_multipliers

Array = NDArray[np.float64]
Rhs = Callable[[float, Array], Array]
Step = tuple[float, Array, Array]

MIN_STEP = 1e-12
# rk45 local error control per unit of requested accuracy
LOCAL_TOLERANCE = 1e-2
# scipy rejects rtol below 100 eps
MIN_RTOL = 100 * float(np.finfo(float).eps)


def solver_tolerances(cfg: IntegratorConfig) -> tuple[float, float]:
    """(rtol, atol) handed to rk45 for the accuracy cfg requests."""
    rtol = max(cfg.rel_tol * LOCAL_TOLERANCE, MIN_RTOL)
    atol = cfg.abs_tol * LOCAL_TOLERANCE
    return rtol, atol


def relative_drift(values: Array, reference: float, scale: float = 0.0) -> Array:
    """|Q(t) - Q(0)| / max(|Q(0)|, scale)."""
    denom = max(abs(reference), scale, np.finfo(float).tiny)
    return np.abs(np.asarray(values) - reference) / denom


class Integrator(LoggingMixin):
    """Advance an autonomous system with rk45 (adaptive) or rk4 (fixed step)."""

    def __init__(self, cfg: IntegratorConfig, reverse: bool = False):
        super().__init__()
        self.cfg = cfg
        self.reverse = reverse

    def _wrap(self, fun: Rhs) -> Rhs:
        if not self.reverse:
            return fun
        return lambda t, y: -fun(t, y)

    def steps(self, fun: Rhs, y0: Array, t0: float, t1: float) -> Iterator[Step]:
        """
        Yield (t, y, dy/dt) at t0 and after every accepted step up to t1.

        Raises:
            StepUnderflowError: the adaptive step collapsed below MIN_STEP
        """
        rhs = self._wrap(fun)
        y0 = np.asarray(y0, dtype=float)
        if self.cfg.method is Method.RK4:
            yield from self._rk4_steps(rhs, y0, t0, t1)
        else:
            yield from self._rk45_steps(rhs, y0, t0, t1)

    def _rk45_steps(self, rhs: Rhs, y0: Array, t0: float, t1: float) -> Iterator[Step]:
        rtol, atol = solver_tolerances(self.cfg)
        solver = RK45(
            rhs,
            t0,
            y0,
            t1,
            rtol=rtol,
            atol=atol,
            first_step=min(self.cfg.dt_init, t1 - t0),
        )
        yield t0, y0.copy(), np.array(solver.f, copy=True)
        while solver.status == "running":
            message = solver.step()
            if solver.status == "failed":
                self.logger.warning("rk45 step rejected", time=solver.t, reason=message)
                raise StepUnderflowError(solver.t, solver.step_size or 0.0)
            if solver.status == "running" and solver.step_size < MIN_STEP:
                raise StepUnderflowError(solver.t, solver.step_size)
            yield solver.t, solver.y.copy(), np.array(solver.f, copy=True)

    def _rk4_steps(self, rhs: Rhs, y0: Array, t0: float, t1: float) -> Iterator[Step]:
        n = max(1, math.ceil((t1 - t0) / self.cfg.dt_init - 1e-9))
        h = (t1 - t0) / n
        y = y0.copy()
        f = rhs(t0, y)
        yield t0, y, f
        for i in range(1, n + 1):
            t = t0 + (i - 1) * h
            k1 = f
            k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
            k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t_new = t1 if i == n else t0 + i * h
            f = rhs(t_new, y)
            yield t_new, y, f

    def advance(self, fun: Rhs, y0: Array, t0: float, t1: float) -> Array:
        """State at t1."""
        y = np.asarray(y0, dtype=float)
        for _, y, _ in self.steps(fun, y0, t0, t1):  # noqa: B007
            pass
        return y


def prepare_initial(
    initial: MultiplierState | ExpectationState,
    p: ModelParams,
    rep: Representation,
    mode: Mode,
) -> tuple[Array, float | None, ModelParams]:
    """Initial vector of the chosen representation, k_nl and the mapping parameters."""
    # classical multipliers obey the hbar = 0 relations
    mapping = p if mode is Mode.QUANTUM else p.model_copy(update={"hbar": 0.0})
    if rep is Representation.MULTIPLIERS:
        if isinstance(initial, MultiplierState):
            s = initial
        else:
            s = evs_to_multipliers(initial, mapping)
        return s.as_array(), k_nl_of(s, mapping), mapping
    ev = initial if isinstance(initial, ExpectationState) else multipliers_to_evs(initial, mapping)
    check_admissible(ev, p, mode)
    return ev.as_array(), None, mapping


def audit_columns(
    y: Array, p: ModelParams, rep: Representation, k_value: float | None
) -> tuple[Array, Array]:
    """Audited invariant and energy for samples y of shape (5, n)."""
    if rep is Representation.MULTIPLIERS:
        l1, l2, l3, a, p_a = y
        invariant = np.sqrt(np.maximum(l1 * l2 - l3 * l3, 0.0))
        assert k_value is not None
        return invariant, energy_terms(k_value * l2, k_value * l1, a, p_a, p)
    x2, p2, l_val, a, p_a = y
    return uncertainty_invariant(x2, p2, l_val), energy_terms(x2, p2, a, p_a, p)


def to_expectations(states: Array, rep: Representation, k_value: float | None) -> Array:
    """Map sampled states of shape (n, 5) onto expectation values."""
    if rep is Representation.EXPECTATIONS:
        return states
    assert k_value is not None
    l1, l2, l3, a, p_a = states.T
    return np.column_stack([k_value * l2, k_value * l1, -2.0 * k_value * l3, a, p_a])


def integrate(
    initial: MultiplierState | ExpectationState,
    p: ModelParams,
    cfg: IntegratorConfig,
    rep: Representation = Representation.EXPECTATIONS,
    mode: Mode = Mode.QUANTUM,
    reverse: bool = False,
) -> Trajectory:
    """
    Integrate one trajectory and audit its invariants.

    Args:
        initial: initial state in either representation
        p: model parameters
        cfg: integrator configuration
        rep: representation the equations are solved in
        mode: quantum or classical statistics
        reverse: integrate with the negated right-hand side

    Returns:
        Trajectory sampled every ``cfg.sample_stride`` accepted steps, final step included

    Raises:
        PureLimitError: multiplier representation requested at I <= hbar^2/4
        DomainError: initial moments violate the bound of the mode
        DriftExceededError: an invariant drifted beyond ``cfg.drift_tol``
        StepUnderflowError: the adaptive step collapsed
    """
    y0, k_value, _ = prepare_initial(initial, p, rep, mode)
    if rep is Representation.MULTIPLIERS:
        assert k_value is not None
        k_frozen = k_value

        def fun(t: float, y: Array) -> Array:
            return rhs_multipliers(y, p, k_frozen)

        quantity = "I_lambda"
    else:

        def fun(t: float, y: Array) -> Array:
            return rhs_expectations(y, p, mode)

        quantity = "I"

    q0, e0 = (float(v) for v in audit_columns(y0, p, rep, k_value))
    i_scale = float(abs(y0[0] * y0[1])) if rep is Representation.EXPECTATIONS else 0.0

    engine = Integrator(cfg, reverse=reverse)
    engine.log_method_call("integrate", rep=rep.value, mode=mode.value, t_end=cfg.t_end)

    times: list[float] = []
    samples: list[Array] = []
    n_steps = -1
    last: tuple[float, Array] | None = None
    for n_steps, (t, y, _) in enumerate(engine.steps(fun, y0, 0.0, cfg.t_end)):
        last = (t, y)
        if n_steps % cfg.sample_stride:
            continue
        _append_checked(times, samples, t, y, p, rep, k_value, q0, e0, i_scale, cfg, quantity)
    if last is not None and times[-1] != last[0]:
        _append_checked(
            times, samples, last[0], last[1], p, rep, k_value, q0, e0, i_scale, cfg, quantity
        )

    states = np.array(samples)
    evs = to_expectations(states, rep, k_value)
    columns = invariant_columns(evs.T, p, mode)
    if rep is Representation.MULTIPLIERS:
        l1, l2, l3 = states[:, 0], states[:, 1], states[:, 2]
        columns["i_lambda"] = np.sqrt(l1 * l2 - l3 * l3)

    engine.logger.info(
        "Integration finished",
        representation=rep.value,
        mode=mode.value,
        steps=n_steps,
        samples=len(times),
        t_final=times[-1],
    )
    return Trajectory(
        representation=rep,
        mode=mode,
        times=np.array(times),
        states=states,
        evs=evs,
        invariants=columns,
        k_nl=k_value,
        steps=n_steps,
    )


def _append_checked(
    times: list[float],
    samples: list[Array],
    t: float,
    y: Array,
    p: ModelParams,
    rep: Representation,
    k_value: float | None,
    q0: float,
    e0: float,
    i_scale: float,
    cfg: IntegratorConfig,
    quantity: str,
) -> None:
    q, e = audit_columns(y, p, rep, k_value)
    q_drift = float(relative_drift(q, q0, i_scale))
    if q_drift > cfg.drift_tol:
        raise DriftExceededError(quantity, q_drift, t, cfg.drift_tol)
    e_drift = float(relative_drift(e, e0))
    if e_drift > cfg.drift_tol:
        raise DriftExceededError("E", e_drift, t, cfg.drift_tol)
    times.append(float(t))
    samples.append(np.array(y, copy=True))
