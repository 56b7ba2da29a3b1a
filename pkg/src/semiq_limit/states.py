"""
Construction of initial states with a prescribed invariant at fixed energy.
"""

import math

import numpy as np
from numpy.typing import NDArray

from semiq_core.exceptions import DomainError
from semiq_core.exceptions import UnreachableRegimeError
from semiq_dynamics.integrator import Integrator
from semiq_dynamics.models import IntegratorConfig
from semiq_dynamics.rhs import rhs_expectations
from semiq_maxent.algebra import energy
from semiq_maxent.algebra import invariant_i
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import ModelParams

from .models import ReductionPattern


def _sign(value: float) -> float:
    return -1.0 if value < 0 else 1.0


def state_with_invariant(
    base: ExpectationState,
    i_target: float,
    pattern: ReductionPattern,
    p: ModelParams,
) -> ExpectationState:
    """
    Move ``base`` to I = i_target keeping its energy.

    ``correlation`` keeps x2, p2, A and P_A and sets <L>; ``proportional`` scales
    (x2, p2, L) by sqrt(I/I0) and re-solves P_A from the energy at fixed A.

    Raises:
        DomainError: the pattern cannot produce i_target from this base
        UnreachableRegimeError: the energy cannot be kept (negative kinetic term)
    """
    if i_target < 0:
        raise DomainError("target invariant must be non-negative", f"got {i_target!r}")

    if pattern is ReductionPattern.CORRELATION:
        product = base.x2 * base.p2
        if i_target > product:
            raise DomainError(
                "correlation pattern needs I <= x2*p2", f"I={i_target!r}, x2*p2={product!r}"
            )
        l_val = _sign(base.l) * 2.0 * math.sqrt(product - i_target)
        return base.model_copy(update={"l": l_val})

    i0 = invariant_i(base)
    if i0 <= 0:
        raise DomainError("proportional pattern needs a base with I > 0", f"I0={i0!r}")
    c = math.sqrt(i_target / i0)
    target_energy = energy(base, p)
    scaled = {"x2": c * base.x2, "p2": c * base.p2, "l": c * base.l, "p_a": 0.0}
    quantum = base.model_copy(update=scaled)
    kinetic = target_energy - energy(quantum, p)
    if kinetic < 0:
        raise UnreachableRegimeError(
            "energy cannot be kept at this invariant", f"I={i_target!r} needs P_A^2 < 0"
        )
    return quantum.model_copy(update={"p_a": _sign(base.p_a) * math.sqrt(2.0 * p.m_cl * kinetic)})


def invariant_for_relative_energy(e_r: float, energy_value: float, omega_q: float) -> float:
    """I = (|E| / (E_r omega_q))^2."""
    if not e_r > 0:
        raise DomainError("relative energy must be positive", f"got {e_r!r}")
    return (abs(energy_value) / (e_r * omega_q)) ** 2


def paired_distance(
    first: ExpectationState,
    second: ExpectationState,
    p: ModelParams,
    cfg: IntegratorConfig,
) -> float:
    """
    Sup over accepted steps of |ev1(t) - ev2(t)| / |ev1(0)|.

    Both trajectories are integrated as one stacked system so they share step times.
    """
    y0: NDArray[np.float64] = np.column_stack([first.as_array(), second.as_array()])

    def fun(t: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        return rhs_expectations(y.reshape(5, 2), p).ravel()

    norm0 = float(np.linalg.norm(first.as_array()))
    worst = 0.0
    for _, y, _ in Integrator(cfg).steps(fun, y0.ravel(), 0.0, cfg.t_end):
        pair = y.reshape(5, 2)
        worst = max(worst, float(np.linalg.norm(pair[:, 0] - pair[:, 1])))
    return worst / norm0
