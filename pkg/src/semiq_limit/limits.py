"""
Classical-limit runs: hbar -> 0, I -> hbar^2/4 and I -> 0 at fixed energy.
"""

import math

import numpy as np

from semiq_core.exceptions import DomainError
from semiq_core.exceptions import PureLimitError
from semiq_core.logging import LoggingMixin
from semiq_dynamics.integrator import integrate
from semiq_dynamics.models import IntegratorConfig
from semiq_dynamics.models import Representation
from semiq_dynamics.models import Trajectory
from semiq_maxent.algebra import check_admissible
from semiq_maxent.algebra import invariant_i
from semiq_maxent.algebra import moments_from_normal_modes
from semiq_maxent.algebra import spectrum
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams
from semiq_maxent.models import MultiplierState
from semiq_maxent.models import SpectrumSummary
from semiq_maxent.special import entropy_from_ilambda
from semiq_maxent.special import ilambda_from_i
from semiq_maxent.special import lambda0
from semiq_maxent.special import pure_threshold
from semiq_maxent.special import purity

from .models import ConvergenceRecord
from .models import ConvergenceReport
from .models import GroundStateVerdict
from .models import LimitRecord
from .models import LimitReport
from .models import LimitSchedule
from .models import Ordering
from .models import ReductionPattern
from .states import paired_distance
from .states import state_with_invariant


def classical_reference(
    initial: ExpectationState, p: ModelParams, cfg: IntegratorConfig
) -> Trajectory:
    """Expectation-value trajectory under classical statistics."""
    return integrate(initial, p, cfg, Representation.EXPECTATIONS, Mode.CLASSICAL)


def fit_order(hbar: list[float], errors: list[float]) -> float | None:
    """Least-squares slope of log(error) against log(hbar), None if fewer than two usable points."""
    pairs = [(h, err) for h, err in zip(hbar, errors, strict=True) if err > 0 and h > 0]
    if len(pairs) < 2:
        return None
    x = np.log([h for h, _ in pairs])
    y = np.log([err for _, err in pairs])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def _non_increasing(values: list[float], slack: float = 0.0) -> bool:
    return all(b <= a * (1.0 + slack) for a, b in zip(values, values[1:], strict=False))


def _non_decreasing(values: list[float]) -> bool:
    return all(b >= a for a, b in zip(values, values[1:], strict=False))


def _record(
    hbar: float, i_val: float, gap: float | None, distance: float | None
) -> LimitRecord:
    if i_val <= pure_threshold(hbar):
        raise PureLimitError(
            "limit step reached the pure state", f"I={i_val!r}, hbar={hbar!r}"
        )
    il = float(ilambda_from_i(i_val, hbar))
    z = hbar * il
    return LimitRecord(
        hbar=hbar,
        gap=gap,
        i_uncert=i_val,
        i_lambda=il,
        hbar_i_lambda=z,
        purity=float(purity(il, hbar)),
        entropy=float(entropy_from_ilambda(il, hbar)),
        lambda0=float(lambda0(il, hbar)),
        p0=float(-math.expm1(-2.0 * z)),
        distance=distance,
    )


class LimitRunner(LoggingMixin):
    """Walk a LimitSchedule and record how the MaxEnt scalars move."""

    def __init__(self, schedule: LimitSchedule, p: ModelParams, cfg: IntegratorConfig):
        super().__init__()
        self.schedule = schedule
        self.params = p
        self.cfg = cfg.model_copy(update={"t_end": schedule.t_end})
        self._distances: dict[float, float] = {}

    def _distance(self, i_val: float) -> float:
        """Distance of the EV trajectory at I to the classical reference at I = 0."""
        if i_val not in self._distances:
            base = self.schedule.base_initial
            pattern = self.schedule.pattern
            state = state_with_invariant(base, i_val, pattern, self.params)
            reference = state_with_invariant(base, 0.0, ReductionPattern.CORRELATION, self.params)
            self._distances[i_val] = paired_distance(state, reference, self.params, self.cfg)
        return self._distances[i_val]

    def run(self) -> LimitReport:
        """
        Run the schedule.

        Raises:
            PureLimitError: a step sits at or below hbar^2/4
            UnreachableRegimeError: the reduction pattern cannot keep the energy
        """
        self.log_method_call("run", ordering=self.schedule.ordering.value)
        if self.schedule.ordering is Ordering.HBAR_FIRST:
            report = self._hbar_first()
        else:
            report = self._i_first()
        self.logger.info(
            "Limit run finished",
            ordering=report.ordering.value,
            records=len(report.records),
            verdict=report.verdict,
        )
        return report

    def _hbar_first(self) -> LimitReport:
        base = self.schedule.base_initial
        i_val = invariant_i(base)
        if not i_val > 0:
            raise DomainError("hbar-first limit needs a base state with I > 0", f"I={i_val!r}")
        # the EV equations do not contain hbar, so one distance serves every step
        distance = self._distance(i_val)

        records: list[LimitRecord] = []
        for hbar in self.schedule.hbar_seq:
            params = self.params.model_copy(update={"hbar": hbar})
            check_admissible(base, params, Mode.QUANTUM)
            records.append(_record(hbar, i_val, None, distance))

        classical_il = 0.5 / math.sqrt(i_val)
        errors = [abs(r.i_lambda - classical_il) for r in records]
        flags = {
            "uncertainty_respected": all(i_val >= r.hbar**2 / 4 for r in records),
            "i_lambda_to_classical": _non_increasing(errors),
            "hbar_i_lambda_to_zero": _non_increasing([r.hbar_i_lambda for r in records]),
            "purity_to_zero": _non_increasing([r.purity for r in records]),
        }
        return LimitReport(
            ordering=Ordering.HBAR_FIRST,
            records=records,
            flags=flags,
            fitted_order=fit_order(list(self.schedule.hbar_seq), errors),
        )

    def _i_first(self) -> LimitReport:
        records: list[LimitRecord] = []
        for hbar in self.schedule.hbar_seq:
            for gap in self.schedule.i_gap_seq:
                i_val = hbar * hbar * (0.25 + gap)
                records.append(_record(hbar, i_val, gap, self._distance(i_val)))

        n_gap = len(self.schedule.i_gap_seq)
        inner = [records[j : j + n_gap] for j in range(0, len(records), n_gap)]
        flags = {
            "uncertainty_respected": all(r.i_uncert > r.hbar**2 / 4 for r in records),
            "i_lambda_diverges": all(_non_decreasing([r.i_lambda for r in row]) for row in inner),
            "purity_to_one": all(_non_decreasing([r.purity for r in row]) for row in inner),
            "entropy_to_zero": all(_non_increasing([r.entropy for r in row]) for row in inner),
        }
        return LimitReport(ordering=Ordering.I_FIRST, records=records, flags=flags)


def run_limit(schedule: LimitSchedule, p: ModelParams, cfg: IntegratorConfig) -> LimitReport:
    """Execute a limit schedule."""
    return LimitRunner(schedule, p, cfg).run()


def classical_convergence(
    base: ExpectationState,
    i_values: list[float],
    p: ModelParams,
    cfg: IntegratorConfig,
    pattern: ReductionPattern = ReductionPattern.CORRELATION,
) -> ConvergenceReport:
    """
    Distance to the I = 0 classical trajectory for a decreasing sequence of I at fixed energy.

    Every state must be quantum-admissible (I >= hbar^2/4).
    """
    if any(b >= a for a, b in zip(i_values, i_values[1:], strict=False)):
        raise DomainError("invariant sequence must be strictly decreasing", f"got {i_values!r}")
    reference = state_with_invariant(base, 0.0, ReductionPattern.CORRELATION, p)
    records: list[ConvergenceRecord] = []
    for i_val in i_values:
        state = state_with_invariant(base, i_val, pattern, p)
        check_admissible(state, p, Mode.QUANTUM)
        records.append(
            ConvergenceRecord(i_uncert=i_val, distance=paired_distance(state, reference, p, cfg))
        )
    distances = [r.distance for r in records]
    return ConvergenceReport(
        records=records,
        monotone=all(b < a for a, b in zip(distances, distances[1:], strict=False)),
    )


def mode_moments(summary: SpectrumSummary, hbar: float) -> tuple[float, float, float]:
    """<X^2>, <P^2>, <XP + PX> of the diagonal operator sum_n p_n |n><n|."""
    n = np.arange(len(summary.probs), dtype=float)
    second = float(hbar * np.dot(summary.probs, n + 0.5))
    return second, second, 0.0


def ground_state_check(
    hbar: float, s: MultiplierState | None = None, i_lambda_value: float = 1e6
) -> GroundStateVerdict:
    """
    Pure-state density matrix yields (hbar/2, hbar/2, 0) for the normal modes and
    I = hbar^2/4 for (x, p) under the transform of ``s``.
    """
    if not hbar > 0:
        raise DomainError("ground-state check needs hbar > 0", f"got {hbar!r}")
    summary = spectrum(i_lambda_value / hbar, hbar, 1)
    x2_mode, p2_mode, l_mode = mode_moments(summary, hbar)
    s = s or MultiplierState(lambda1=1.0, lambda2=1.0, lambda3=0.0)
    x2, p2, l_val = moments_from_normal_modes(s, x2_mode, p2_mode, l_mode)
    i_val = x2 * p2 - 0.25 * l_val * l_val
    expected = 0.25 * hbar * hbar
    ok = (
        summary.purity == 1.0
        and math.isclose(x2_mode, 0.5 * hbar, rel_tol=1e-12)
        and math.isclose(i_val, expected, rel_tol=1e-9)
    )
    return GroundStateVerdict(
        hbar=hbar,
        mode_x2=x2_mode,
        mode_p2=p2_mode,
        mode_l=l_mode,
        i_uncert=i_val,
        expected=expected,
        purity=summary.purity,
        ok=ok,
    )
