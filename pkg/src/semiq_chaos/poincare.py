"""
Poincare sections on the plane A = 0 crossed with P_A > 0.
"""

import numpy as np
from numpy.typing import NDArray
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from semiq_core.exceptions import NoCrossingsError
from semiq_core.logging import LoggingMixin
from semiq_dynamics.integrator import Integrator
from semiq_dynamics.integrator import prepare_initial
from semiq_dynamics.integrator import to_expectations
from semiq_dynamics.models import IntegratorConfig
from semiq_dynamics.models import Representation
from semiq_dynamics.rhs import rhs_expectations
from semiq_dynamics.rhs import rhs_multipliers
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams
from semiq_maxent.models import MultiplierState

from .models import PoincareSection
from .models import SectionSummary

Array = NDArray[np.float64]

A_INDEX = 3
GRID_BINS = 20


class PoincareSectioner(LoggingMixin):
    """Collect upward crossings of A = 0 refined by cubic Hermite interpolation."""

    def __init__(
        self,
        p: ModelParams,
        cfg: IntegratorConfig,
        rep: Representation = Representation.EXPECTATIONS,
        mode: Mode = Mode.QUANTUM,
        crossing_tol: float = 1e-9,
    ):
        super().__init__()
        self.p = p
        self.cfg = cfg
        self.rep = rep
        self.mode = mode
        self.crossing_tol = crossing_tol

    def _refine(
        self, t0: float, y0: Array, f0: Array, t1: float, y1: Array, f1: Array
    ) -> tuple[float, Array]:
        """Root of A on [t0, t1] of the step's Hermite interpolant."""
        spline = CubicHermiteSpline([t0, t1], np.vstack([y0, y1]), np.vstack([f0, f1]), axis=0)
        if y1[A_INDEX] == 0.0:
            return t1, y1
        root = brentq(
            lambda s: float(spline(s)[A_INDEX]), t0, t1, xtol=1e-15, rtol=4 * np.finfo(float).eps
        )
        return float(root), np.asarray(spline(root))

    def run(self, initial: MultiplierState | ExpectationState) -> PoincareSection:
        """
        Integrate to ``cfg.t_end`` and record the section.

        Raises:
            NoCrossingsError: the trajectory never crosses A = 0 upward
        """
        y0, k_value, _ = prepare_initial(initial, self.p, self.rep, self.mode)
        p, mode = self.p, self.mode
        if self.rep is Representation.MULTIPLIERS:
            assert k_value is not None
            k_frozen = k_value

            def fun(t: float, y: Array) -> Array:
                return rhs_multipliers(y, p, k_frozen)

        else:

            def fun(t: float, y: Array) -> Array:
                return rhs_expectations(y, p, mode)

        self.log_method_call("run", t_end=self.cfg.t_end, rep=self.rep.value)
        times: list[float] = []
        states: list[Array] = []
        prev: tuple[float, Array, Array] | None = None
        for t, y, f in Integrator(self.cfg).steps(fun, y0, 0.0, self.cfg.t_end):
            if prev is not None and prev[1][A_INDEX] < 0.0 <= y[A_INDEX]:
                t_c, y_c = self._refine(*prev, t, y, f)
                if y_c[4] > 0:
                    times.append(t_c)
                    states.append(y_c)
            prev = (t, y, f)

        if not times:
            raise NoCrossingsError(
                "trajectory never crossed A = 0 upward", f"t_end={self.cfg.t_end!r}"
            )
        evs = to_expectations(np.array(states), self.rep, k_value)
        section = PoincareSection(
            points=evs[:, [0, 1, 2, 4]],
            crossing_times=np.array(times),
            residual_a=np.abs(evs[:, A_INDEX]),
            crossing_tol=self.crossing_tol,
        )
        self.logger.info(
            "Poincare section finished",
            crossings=len(section),
            max_residual=float(section.residual_a.max()),
        )
        return section


def poincare(
    initial: MultiplierState | ExpectationState,
    p: ModelParams,
    cfg: IntegratorConfig,
    rep: Representation = Representation.EXPECTATIONS,
    mode: Mode = Mode.QUANTUM,
) -> PoincareSection:
    """Section of the trajectory from ``initial`` over [0, cfg.t_end]."""
    return PoincareSectioner(p, cfg, rep, mode).run(initial)


def summarize_section(points: Array, bins: int = GRID_BINS) -> SectionSummary:
    """
    Occupied fraction of a bins x bins grid spanning the (x2, P_A) extent of the points.

    Args:
        points: rows of (x2, p2, L, P_A)
        bins: cells per axis
    """
    points = np.asarray(points, dtype=float).reshape(-1, 4)
    n = points.shape[0]
    if n == 0:
        return SectionSummary(n_points=0, fill_fraction=0.0)
    x, y = points[:, 0], points[:, 3]
    ranges = []
    for col in (x, y):
        lo, hi = float(col.min()), float(col.max())
        if hi <= lo:
            pad = max(abs(lo), 1.0) * 1e-12
            lo, hi = lo - pad, hi + pad
        ranges.append((lo, hi))
    counts, _, _ = np.histogram2d(x, y, bins=bins, range=ranges)
    return SectionSummary(n_points=n, fill_fraction=float(np.count_nonzero(counts)) / bins**2)
