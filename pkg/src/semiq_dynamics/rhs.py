"""
Right-hand sides of the semiquantum and classical equations of motion.

Every function takes a state array of shape (n,) or a batch of shape (n, k) and
returns the derivative with the same shape.
"""

import numpy as np
from numpy.typing import NDArray

from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams

Array = NDArray[np.float64]


def rhs_multipliers(y: Array, p: ModelParams, k_nl: float) -> Array:
    """
    Closed system for (lambda1, lambda2, lambda3, A, P_A).

    k_nl = sqrt(I)/I_lambda is a constant of the motion fixed by the initial state.
    """
    l1, l2, l3, a, p_a = y
    mw2 = p.m_q * (p.omega_q**2 + p.e**2 * a * a)
    return np.array(
        [
            2.0 * mw2 * l3,
            -2.0 * l3 / p.m_q,
            -l1 / p.m_q + mw2 * l2,
            p_a / p.m_cl,
            -(p.e**2) * p.m_q * a * k_nl * l2,
        ]
    )


def rhs_expectations(y: Array, p: ModelParams, mode: Mode = Mode.QUANTUM) -> Array:
    """
    Closed system for (<x^2>, <p^2>, <L>, A, P_A).

    The functional form is the same in both modes; ``mode`` only restricts which
    initial states are admissible.
    """
    x2, p2, l_val, a, p_a = y
    mw2 = p.m_q * (p.omega_q**2 + p.e**2 * a * a)
    return np.array(
        [
            l_val / p.m_q,
            -mw2 * l_val,
            2.0 * p2 / p.m_q - 2.0 * mw2 * x2,
            p_a / p.m_cl,
            -(p.e**2) * p.m_q * a * x2,
        ]
    )


def rhs_point(y: Array, p: ModelParams) -> Array:
    """Point-particle system (x, p, A, P_A) with every variable classical."""
    x, mom, a, p_a = y
    w2 = p.omega_q**2 + p.e**2 * a * a
    return np.array(
        [
            mom / p.m_q,
            -p.m_q * w2 * x,
            p_a / p.m_cl,
            -(p.e**2) * p.m_q * a * x * x,
        ]
    )


def energy_point(y: Array, p: ModelParams) -> Array:
    """Energy of the point-particle system."""
    x, mom, a, p_a = y
    w2 = p.omega_q**2 + p.e**2 * a * a
    return 0.5 * (mom * mom / p.m_q + p_a * p_a / p.m_cl + p.m_q * w2 * x * x)
