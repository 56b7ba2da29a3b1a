"""
Moment factorization at the delta limit of the classical distribution.
"""

import math

import numpy as np
from numpy.typing import NDArray

from semiq_core.exceptions import FactorizationInputError
from semiq_core.logging import get_logger
from semiq_dynamics.integrator import Integrator
from semiq_dynamics.models import IntegratorConfig
from semiq_dynamics.rhs import rhs_expectations
from semiq_dynamics.rhs import rhs_point
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams

from .models import FactorizationResult

logger = get_logger(__name__)

SUPPORTED_MOMENTS = ((2, 0), (0, 2), (1, 1))
DEFAULT_MOMENTS = list(SUPPORTED_MOMENTS)


def _point_initial(initial: ExpectationState, signs: tuple[int, int]) -> NDArray[np.float64]:
    sx, sp = signs
    if sx not in (-1, 1) or sp not in (-1, 1):
        raise FactorizationInputError("signs must be +1 or -1", f"got {signs!r}")
    x0 = sx * math.sqrt(initial.x2)
    p0 = sp * math.sqrt(initial.p2)
    if initial.l * sx * sp < 0:
        raise FactorizationInputError(
            "sign of <L>(0) contradicts the point initial condition",
            f"l={initial.l!r} with signs {signs!r}",
        )
    return np.array([x0, p0, initial.a, initial.p_a])


def _point_moment(point: NDArray[np.float64], n: int, m: int) -> NDArray[np.float64]:
    x, mom = point[0], point[1]
    if (n, m) == (1, 1):
        # <L> = <xp + px> is twice the symmetrized product
        return 2.0 * x * mom
    return x**n * mom**m


def _ev_moment(ev: NDArray[np.float64], n: int, m: int) -> NDArray[np.float64]:
    return {(2, 0): ev[0], (0, 2): ev[1], (1, 1): ev[2]}[(n, m)]


def factorization_check(
    initial: ExpectationState,
    signs: tuple[int, int],
    p: ModelParams,
    cfg: IntegratorConfig,
    moments: list[tuple[int, int]] | None = None,
) -> FactorizationResult:
    """
    Compare powers of the point-classical solution with the classical EV trajectory.

    The 5-dim EV system and the 4-dim point system run as one 9-dim system so every
    residual is taken at shared step times. The residual of (n, m) is
    max_t |x^n p^m - <x^n p^m>| / max_t |<x^n p^m>|.

    Raises:
        FactorizationInputError: bad signs, sign of l(0) inconsistent with them, or an
            unsupported moment
    """
    moments = moments or DEFAULT_MOMENTS
    for nm in moments:
        if tuple(nm) not in SUPPORTED_MOMENTS:
            raise FactorizationInputError(
                "only second moments are carried by the EV system", f"got {nm!r}"
            )
    y0 = np.concatenate([initial.as_array(), _point_initial(initial, signs)])

    def fun(t: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.concatenate([rhs_expectations(y[:5], p, Mode.CLASSICAL), rhs_point(y[5:], p)])

    history = []
    for _, y, _ in Integrator(cfg).steps(fun, y0, 0.0, cfg.t_end):
        history.append(y)
    track = np.array(history).T
    ev, point = track[:5], track[5:]

    residuals: dict[str, float] = {}
    for n, m in moments:
        exact = _ev_moment(ev, n, m)
        scale = max(float(np.max(np.abs(exact))), np.finfo(float).tiny)
        residuals[f"{n},{m}"] = float(np.max(np.abs(_point_moment(point, n, m) - exact))) / scale

    worst = max(residuals.values())
    logger.info("Factorization check finished", residual=worst, steps=track.shape[1] - 1)
    return FactorizationResult(
        residuals=residuals, max_residual=worst, t_end=cfg.t_end, steps=track.shape[1] - 1
    )
