"""
Maximal Lyapunov exponent by two-trajectory renormalization.
"""

import math

import numpy as np
from numpy.typing import NDArray

from semiq_core.exceptions import NonConvergedError
from semiq_core.logging import LoggingMixin
from semiq_dynamics.integrator import Integrator
from semiq_dynamics.integrator import audit_columns
from semiq_dynamics.integrator import prepare_initial
from semiq_dynamics.integrator import relative_drift
from semiq_dynamics.models import IntegratorConfig
from semiq_dynamics.models import Representation
from semiq_dynamics.rhs import rhs_expectations
from semiq_dynamics.rhs import rhs_multipliers
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams
from semiq_maxent.models import MultiplierState

from .models import LyapunovParams
from .models import LyapunovResult

Array = NDArray[np.float64]

CONVERGENCE_WINDOW = 0.1
MAX_VARIATION = 0.2
VARIATION_FLOOR = 1e-3


def perturbation_direction(seed: int, dim: int = 5) -> Array:
    """Unit vector drawn from the seeded generator."""
    v = np.random.default_rng(seed).standard_normal(dim)
    return v / np.linalg.norm(v)


class LyapunovEstimator(LoggingMixin):
    """
    Benettin estimate of the largest Lyapunov exponent.

    Reference and perturbed copies run as one stacked system so both see the same
    step sequence. The separation is renormalized to d0 every renorm_dt.
    """

    def __init__(
        self,
        p: ModelParams,
        cfg: IntegratorConfig,
        params: LyapunovParams | None = None,
        seed: int = 12345,
        rep: Representation = Representation.EXPECTATIONS,
        mode: Mode = Mode.QUANTUM,
    ):
        super().__init__()
        self.p = p
        self.cfg = cfg
        self.params = params or LyapunovParams()
        self.seed = seed
        self.rep = rep
        self.mode = mode

    def _rhs(self, k_value: float | None):
        p, mode = self.p, self.mode
        if self.rep is Representation.MULTIPLIERS:
            assert k_value is not None
            k_frozen = k_value

            def fun(t: float, y: Array) -> Array:
                return rhs_multipliers(y.reshape(5, 2), p, k_frozen).ravel()

        else:

            def fun(t: float, y: Array) -> Array:
                return rhs_expectations(y.reshape(5, 2), p, mode).ravel()

        return fun

    def run(self, initial: MultiplierState | ExpectationState) -> LyapunovResult:
        """
        Estimate lambda_max over the configured horizon.

        Raises:
            NonConvergedError: the running estimate varies more than 20% over its last
                10% and ``raise_on_nonconvergence`` is set
        """
        lp = self.params
        y0, k_value, _ = prepare_initial(initial, self.p, self.rep, self.mode)
        q0, e0 = (float(v) for v in audit_columns(y0, self.p, self.rep, k_value))
        i_scale = float(abs(y0[0] * y0[1])) if self.rep is Representation.EXPECTATIONS else 0.0

        fun = self._rhs(k_value)
        engine = Integrator(self.cfg)
        self.log_method_call("run", horizon=lp.horizon, renorm_dt=lp.renorm_dt, d0=lp.d0)

        ref = y0.copy()
        pert = y0 + lp.d0 * perturbation_direction(self.seed)
        n_intervals = max(1, math.ceil(lp.horizon / lp.renorm_dt - 1e-9))
        times = np.empty(n_intervals)
        series = np.empty(n_intervals)
        log_sum = 0.0
        q_drift = 0.0
        e_drift = 0.0
        t = 0.0
        for j in range(n_intervals):
            t_next = lp.horizon if j == n_intervals - 1 else (j + 1) * lp.renorm_dt
            stacked = engine.advance(fun, np.column_stack([ref, pert]).ravel(), t, t_next)
            pair = stacked.reshape(5, 2)
            ref, pert = pair[:, 0].copy(), pair[:, 1].copy()

            sep = pert - ref
            dist = float(np.linalg.norm(sep))
            log_sum += math.log(dist / lp.d0)
            pert = ref + sep * (lp.d0 / dist)

            q, e = audit_columns(ref, self.p, self.rep, k_value)
            q_drift = max(q_drift, float(relative_drift(q, q0, i_scale)))
            e_drift = max(e_drift, float(relative_drift(e, e0)))

            t = t_next
            times[j] = t
            series[j] = log_sum / t

        window = series[int(math.floor((1.0 - CONVERGENCE_WINDOW) * n_intervals)) :]
        uncertainty = float(window.max() - window.min())
        variation = uncertainty / max(abs(float(window.mean())), VARIATION_FLOOR)
        converged = variation <= MAX_VARIATION

        self.logger.info(
            "Lyapunov run finished",
            lambda_max=float(series[-1]),
            uncertainty=uncertainty,
            invariant_drift=q_drift,
            energy_drift=e_drift,
            converged=converged,
        )
        if not converged and lp.raise_on_nonconvergence:
            raise NonConvergedError("running Lyapunov estimate did not settle", variation)
        return LyapunovResult(
            lambda_max=float(series[-1]),
            uncertainty=uncertainty,
            variation=variation,
            converged=converged,
            times=times,
            convergence_series=series,
            renorm_interval=lp.renorm_dt,
            horizon=lp.horizon,
            d0=lp.d0,
            seed=self.seed,
            invariant_drift=q_drift,
            energy_drift=e_drift,
        )


def lyapunov_max(
    initial: MultiplierState | ExpectationState,
    p: ModelParams,
    cfg: IntegratorConfig,
    renorm_dt: float = 1.0,
    horizon: float = 1000.0,
    d0: float = 1e-8,
    seed: int = 12345,
    rep: Representation = Representation.EXPECTATIONS,
    mode: Mode = Mode.QUANTUM,
    raise_on_nonconvergence: bool = True,
) -> LyapunovResult:
    """Largest Lyapunov exponent of the trajectory started at ``initial``."""
    params = LyapunovParams(
        renorm_dt=renorm_dt,
        horizon=horizon,
        d0=d0,
        raise_on_nonconvergence=raise_on_nonconvergence,
    )
    return LyapunovEstimator(p, cfg, params, seed, rep, mode).run(initial)
