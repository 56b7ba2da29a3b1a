"""
E_r-parameterized sweeps over the quasiclassical, transitional and classical regions.
"""

import math

from joblib import Parallel
from joblib import delayed
from pydantic import BaseModel
from pydantic import ConfigDict

from semiq_core.config import get_settings
from semiq_core.exceptions import DomainError
from semiq_core.exceptions import NoCrossingsError
from semiq_core.exceptions import UnreachableRegimeError
from semiq_core.logging import LoggingMixin
from semiq_dynamics.models import IntegratorConfig
from semiq_limit.models import ReductionPattern
from semiq_limit.states import invariant_for_relative_energy
from semiq_limit.states import state_with_invariant
from semiq_maxent.algebra import energy
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams

from .lyapunov import LyapunovEstimator
from .models import LyapunovParams
from .models import RegimeLabel
from .models import RegimeSweep
from .models import SweepPoint
from .models import SweepThresholds
from .poincare import PoincareSectioner
from .poincare import summarize_section


def fluctuation_share(i_val: float, energy_value: float, omega_q: float) -> float:
    """omega_q sqrt(I) / |E|, the part of the energy scale carried by quantum fluctuations."""
    return omega_q * math.sqrt(i_val) / abs(energy_value)


def classify_regime(excess_rate: float, share: float, thresholds: SweepThresholds) -> RegimeLabel:
    """
    Label from the late separation growth rate and the fluctuation share.

    Quasiclassical when the growth rate stays at or below threshold_low. Classical
    when it exceeds threshold_high and the fluctuations carry at most classical_tol
    of the energy scale. Everything else is transitional.
    """
    if excess_rate <= thresholds.threshold_low:
        return RegimeLabel.QUASICLASSICAL
    if excess_rate > thresholds.threshold_high and share <= thresholds.classical_tol:
        return RegimeLabel.CLASSICAL
    return RegimeLabel.TRANSITIONAL


class SweepTask(BaseModel):
    """Everything a worker needs to evaluate one grid point."""

    model_config = ConfigDict(frozen=True)

    index: int
    e_r: float
    energy: float
    base: ExpectationState
    params: ModelParams
    cfg: IntegratorConfig
    lyapunov: LyapunovParams
    thresholds: SweepThresholds
    poincare_t_end: float
    seed: int
    mode: Mode


def evaluate_point(task: SweepTask) -> SweepPoint:
    """Lyapunov exponent, section summary and fluctuation share at one E_r."""
    p = task.params
    i_val = invariant_for_relative_energy(task.e_r, task.energy, p.omega_q)
    unreachable = {"index": task.index, "e_r": task.e_r, "i_uncert": i_val, "reachable": False}
    if task.mode is Mode.QUANTUM and i_val < p.ground_floor:
        return SweepPoint(
            **unreachable, label=RegimeLabel.UNREACHABLE, reason="I below hbar^2/4"
        )
    try:
        state = state_with_invariant(task.base, i_val, ReductionPattern.PROPORTIONAL, p)
    except UnreachableRegimeError as exc:
        return SweepPoint(**unreachable, label=RegimeLabel.UNREACHABLE, reason=exc.message)

    estimator = LyapunovEstimator(
        p,
        task.cfg,
        task.lyapunov.model_copy(update={"raise_on_nonconvergence": False}),
        task.seed,
        mode=task.mode,
    )
    lyap = estimator.run(state)

    try:
        section_cfg = task.cfg.model_copy(update={"t_end": task.poincare_t_end})
        section = PoincareSectioner(p, section_cfg, mode=task.mode).run(state)
        summary = summarize_section(section.points)
    except NoCrossingsError:
        summary = None

    share = fluctuation_share(i_val, task.energy, p.omega_q)
    excess = lyap.excess_rate

    return SweepPoint(
        index=task.index,
        e_r=task.e_r,
        i_uncert=i_val,
        reachable=True,
        label=classify_regime(excess, share, task.thresholds),
        lambda_max=lyap.lambda_max,
        lyapunov_uncertainty=lyap.uncertainty,
        converged=lyap.converged,
        section=summary,
        invariant_drift=max(lyap.invariant_drift, lyap.energy_drift),
        excess_rate=excess,
        fluctuation_share=share,
    )


class RegimeSweeper(LoggingMixin):
    """Run evaluate_point over an E_r grid at the energy of a base state."""

    def __init__(
        self,
        p: ModelParams,
        cfg: IntegratorConfig,
        lyapunov: LyapunovParams | None = None,
        thresholds: SweepThresholds | None = None,
        poincare_t_end: float = 1000.0,
        seed: int = 12345,
        workers: int | None = None,
        mode: Mode = Mode.QUANTUM,
    ):
        super().__init__()
        self.p = p
        self.cfg = cfg
        self.lyapunov = lyapunov or LyapunovParams()
        self.thresholds = thresholds or SweepThresholds()
        self.poincare_t_end = poincare_t_end
        self.seed = seed
        self.workers = workers or get_settings().workers
        self.mode = mode

    def run(self, base: ExpectationState, e_r_grid: tuple[float, ...] | list[float]) -> RegimeSweep:
        grid = tuple(float(v) for v in e_r_grid)
        if not grid:
            raise DomainError("E_r grid must not be empty")
        if any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
            raise DomainError("E_r grid must be strictly increasing", f"got {grid!r}")

        e_val = energy(base, self.p)
        tasks = [
            SweepTask(
                index=j,
                e_r=e_r,
                energy=e_val,
                base=base,
                params=self.p,
                cfg=self.cfg,
                lyapunov=self.lyapunov,
                thresholds=self.thresholds,
                poincare_t_end=self.poincare_t_end,
                seed=self.seed,
                mode=self.mode,
            )
            for j, e_r in enumerate(grid)
        ]
        self.log_method_call("run", points=len(tasks), workers=self.workers, energy=e_val)

        if self.workers > 1:
            run_all = Parallel(n_jobs=self.workers, prefer="processes")
            points = list(run_all(delayed(evaluate_point)(task) for task in tasks))
        else:
            points = [evaluate_point(task) for task in tasks]
        points.sort(key=lambda pt: pt.index)

        self.logger.info(
            "Regime sweep finished",
            points=len(points),
            labels=[pt.label.value for pt in points],
        )
        return RegimeSweep(e_r_values=grid, energy=e_val, points=points)


def regime_sweep(
    base: ExpectationState,
    p: ModelParams,
    cfg: IntegratorConfig,
    e_r_grid: tuple[float, ...] | list[float],
    lyapunov: LyapunovParams | None = None,
    thresholds: SweepThresholds | None = None,
    poincare_t_end: float = 1000.0,
    seed: int = 12345,
    workers: int | None = None,
    mode: Mode = Mode.QUANTUM,
) -> RegimeSweep:
    """Sweep E_r at the energy of ``base`` by scaling I."""
    sweeper = RegimeSweeper(p, cfg, lyapunov, thresholds, poincare_t_end, seed, workers, mode)
    return sweeper.run(base, e_r_grid)
