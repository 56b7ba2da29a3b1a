"""
Closed-form algebra of the MaxEnt density operator.

Maps between the multiplier and expectation-value descriptions, invariants, entropy,
spectrum and the classical phase-space counterpart. All functions are pure.
"""

import math

import numpy as np
from numpy.typing import ArrayLike
from numpy.typing import NDArray

from semiq_core.exceptions import DeltaLimitError
from semiq_core.exceptions import DomainError
from semiq_core.exceptions import PureLimitError

from .models import ClassicalRelations
from .models import ExpectationState
from .models import InvariantSet
from .models import Mode
from .models import ModelParams
from .models import MultiplierState
from .models import SpectrumSummary
from .models import TransformCoeffs
from .special import ASYMPTOTIC_Z
from .special import EPS_PURE
from .special import entropy_from_ilambda
from .special import ilambda_from_i
from .special import lambda0
from .special import pure_threshold
from .special import spectral_entropy
from .special import t_of_ilambda


def _check_multipliers(s: MultiplierState) -> None:
    if not (s.lambda1 > 0 and s.lambda2 > 0):
        raise DomainError(
            "lambda1 and lambda2 must be positive",
            f"got lambda1={s.lambda1!r}, lambda2={s.lambda2!r}",
        )


def i_lambda(s: MultiplierState) -> float:
    """I_lambda = sqrt(lambda1 lambda2 - lambda3^2)."""
    det = s.lambda1 * s.lambda2 - s.lambda3 * s.lambda3
    if not det > 0:
        raise DomainError(
            "lambda1*lambda2 - lambda3^2 must be positive",
            f"got {det!r}; the density operator is not normalizable",
        )
    return math.sqrt(det)


def k_nl(s: MultiplierState, p: ModelParams) -> float:
    """The constant of the motion T(I_lambda)/I_lambda = sqrt(I)/I_lambda."""
    il = i_lambda(s)
    return float(t_of_ilambda(il, p.hbar)) / il


def multipliers_to_evs(s: MultiplierState, p: ModelParams) -> ExpectationState:
    """Second moments of the operator described by multipliers s."""
    _check_multipliers(s)
    k = k_nl(s, p)
    return ExpectationState(
        x2=k * s.lambda2,
        p2=k * s.lambda1,
        l=-2.0 * k * s.lambda3,
        a=s.a,
        p_a=s.p_a,
    )


def uncertainty_invariant(
    x2: ArrayLike, p2: ArrayLike, l: ArrayLike  # noqa: E741
) -> NDArray[np.float64]:
    """x2 p2 - l^2/4 on raw arrays."""
    return np.asarray(x2) * np.asarray(p2) - 0.25 * np.square(l)


def invariant_i(e: ExpectationState) -> float:
    """I = <x^2><p^2> - <L>^2/4. Negative values are returned as data."""
    return e.x2 * e.p2 - 0.25 * e.l * e.l


def evs_to_multipliers(e: ExpectationState, p: ModelParams) -> MultiplierState:
    """Invert multipliers_to_evs through I -> I_lambda."""
    i_val = invariant_i(e)
    if p.hbar > 0:
        if i_val <= pure_threshold(p.hbar):
            raise PureLimitError(
                "multiplier representation undefined at the pure limit",
                f"I={i_val!r} <= hbar^2/4 (hbar={p.hbar!r})",
            )
    elif i_val <= EPS_PURE * e.x2 * e.p2:
        raise PureLimitError(
            "multiplier representation undefined for vanishing I", f"I={i_val!r} with hbar=0"
        )
    il = float(ilambda_from_i(i_val, p.hbar))
    scale = il / math.sqrt(i_val)
    return MultiplierState(
        lambda1=e.p2 * scale,
        lambda2=e.x2 * scale,
        lambda3=-0.5 * e.l * scale,
        a=e.a,
        p_a=e.p_a,
    )


def energy_terms(
    x2: ArrayLike, p2: ArrayLike, a: ArrayLike, p_a: ArrayLike, p: ModelParams
) -> NDArray[np.float64]:
    """<H> on raw arrays."""
    potential = p.m_q * p.omega_sq(np.asarray(a)) * np.asarray(x2)
    return 0.5 * (np.asarray(p2) / p.m_q + np.square(p_a) / p.m_cl + potential)


def energy(e: ExpectationState, p: ModelParams) -> float:
    """E = (p2/m_q + P_A^2/m_cl + m_q (omega_q^2 + e^2 A^2) x2) / 2."""
    return float(energy_terms(e.x2, e.p2, e.a, e.p_a, p))


def relative_energy(
    energy_value: ArrayLike, i_uncert: ArrayLike, omega_q: float
) -> float | NDArray[np.float64]:
    """E_r = |E| / (sqrt(I) omega_q)."""
    i_arr = np.asarray(i_uncert, dtype=float)
    if not np.all(i_arr > 0) or not omega_q > 0:
        raise DomainError("relative energy needs I > 0 and omega_q > 0", f"got I={i_uncert!r}")
    out = np.abs(energy_value) / (np.sqrt(i_arr) * omega_q)
    if np.ndim(out) == 0:
        return float(out)
    return out


def entropy(s: MultiplierState, p: ModelParams) -> float:
    """S = lambda0 + sum_i lambda_i <O_i>, which collapses to lambda0 + 2 I_lambda sqrt(I)."""
    if not p.hbar > 0:
        raise DomainError("entropy of the quantum operator needs hbar > 0", f"got {p.hbar!r}")
    return float(entropy_from_ilambda(i_lambda(s), p.hbar))


def spectrum(i_lambda_value: float, hbar: float, n_max: int) -> SpectrumSummary:
    """Geometric eigenvalue sequence p_n = (1 - q) q^n with q = exp(-2 hbar I_lambda)."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1", f"got {n_max!r}")
    if not (i_lambda_value > 0 and hbar > 0):
        raise DomainError(
            "spectrum needs I_lambda > 0 and hbar > 0", f"got {i_lambda_value!r}, {hbar!r}"
        )
    z = hbar * i_lambda_value
    if z >= ASYMPTOTIC_Z:
        return SpectrumSummary(probs=(1.0,), purity=1.0, spectral_entropy=0.0, truncation_mass=0.0)

    n = np.arange(n_max, dtype=float)
    with np.errstate(under="ignore"):
        probs = -np.expm1(-2.0 * z) * np.exp(-2.0 * z * n)
    probs = probs[probs > 0]
    with np.errstate(under="ignore"):
        truncation = float(np.exp(-2.0 * z * probs.size))
    return SpectrumSummary(
        probs=tuple(float(v) for v in probs),
        purity=float(np.tanh(z)),
        spectral_entropy=float(spectral_entropy(i_lambda_value, hbar)),
        truncation_mass=truncation,
    )


def transform_coeffs(s: MultiplierState) -> TransformCoeffs:
    """lambda_V and lambda_T of the normal-mode transformation."""
    _check_multipliers(s)
    root = math.sqrt(s.lambda1 * s.lambda2)
    lambda_v = root + s.lambda3
    lambda_t = root - s.lambda3
    if not (lambda_v > 0 and lambda_t > 0):
        raise DomainError(
            "normal-mode coefficients must be positive",
            f"lambda_V={lambda_v!r}, lambda_T={lambda_t!r}",
        )
    return TransformCoeffs(lambda_v=lambda_v, lambda_t=lambda_t)


def normal_mode_matrix(s: MultiplierState) -> NDArray[np.float64]:
    """
    Matrix M with (x, p)^T = M (X, P)^T.

    M has unit determinant and brings the quadratic form lambda1 x^2 + lambda2 p^2 +
    lambda3 (xp + px) to I_lambda (X^2 + P^2).
    """
    coeffs = transform_coeffs(s)
    ratio = (s.lambda2 / s.lambda1) ** 0.25
    skew = (coeffs.lambda_v / coeffs.lambda_t) ** 0.25
    half = math.sqrt(0.5)
    return np.array(
        [
            [half * ratio * skew, half * ratio / skew],
            [-half / ratio * skew, half / ratio / skew],
        ]
    )


def moments_from_normal_modes(
    s: MultiplierState, x2_mode: float, p2_mode: float, l_mode: float
) -> tuple[float, float, float]:
    """Second moments of (x, p) from <X^2>, <P^2> and <XP + PX>."""
    (a, b), (c, d) = normal_mode_matrix(s)
    x2 = a * a * x2_mode + b * b * p2_mode + a * b * l_mode
    p2 = c * c * x2_mode + d * d * p2_mode + c * d * l_mode
    l_val = 2.0 * a * c * x2_mode + 2.0 * b * d * p2_mode + (a * d + b * c) * l_mode
    return float(x2), float(p2), float(l_val)


def classical_relations(e: ExpectationState) -> ClassicalRelations:
    """Multipliers of the classical MaxEnt phase-space density with the same moments."""
    i_cl = invariant_i(e)
    scale_ref = e.x2 * e.p2
    if i_cl < -EPS_PURE * scale_ref:
        raise DomainError("classical moments need I_cl >= 0", f"got I_cl={i_cl!r}")
    if i_cl <= EPS_PURE * scale_ref:
        raise DeltaLimitError(
            "classical distribution collapsed to a delta function", f"I_cl={i_cl!r}"
        )
    root = math.sqrt(i_cl)
    il_cl = 0.5 / root
    scale = il_cl / root
    return ClassicalRelations(
        i_cl=i_cl,
        i_lambda_cl=il_cl,
        lambda1_cl=e.p2 * scale,
        lambda2_cl=e.x2 * scale,
        lambda3_cl=-0.5 * e.l * scale,
        lambda0_cl=math.log(math.pi / il_cl),
    )


def check_admissible(e: ExpectationState, p: ModelParams, mode: Mode) -> None:
    """Raise DomainError when the moments violate the uncertainty bound of the mode."""
    i_val = invariant_i(e)
    floor = p.ground_floor if mode is Mode.QUANTUM else 0.0
    tolerance = EPS_PURE * max(floor, e.x2 * e.p2)
    if i_val < floor - tolerance:
        raise DomainError(
            f"{mode.value} moments violate I >= {floor!r}", f"got I={i_val!r}"
        )


def invariant_columns(
    ev: NDArray[np.float64], p: ModelParams, mode: Mode
) -> dict[str, NDArray[np.float64]]:
    """
    Invariant scalars for an array of expectation-value states.

    Args:
        ev: array of shape (5,) or (5, n) holding x2, p2, L, A, P_A rows
        p: model parameters
        mode: statistics the moments obey

    Returns:
        Dict of 1-D arrays keyed like InvariantSet fields
    """
    ev2 = np.atleast_2d(np.asarray(ev, dtype=float).T).T
    x2, p2, l_val, a, p_a = ev2
    i_val = uncertainty_invariant(x2, p2, l_val)
    e_val = energy_terms(x2, p2, a, p_a, p)

    quantum = mode is Mode.QUANTUM and p.hbar > 0
    if quantum:
        regular = i_val > pure_threshold(p.hbar)
    else:
        regular = i_val > EPS_PURE * np.abs(x2 * p2)

    n = i_val.size
    il = np.full(n, np.inf)
    t_val = np.sqrt(np.maximum(i_val, 0.0))
    lam0 = np.full(n, -np.inf)
    s_val = np.full(n, 0.0 if quantum else -np.inf)
    if quantum:
        t_val = np.where(regular, t_val, 0.5 * p.hbar)

    if np.any(regular):
        i_reg = i_val[regular]
        if quantum:
            il_reg = np.atleast_1d(ilambda_from_i(i_reg, p.hbar))
            il[regular] = il_reg
            t_val[regular] = np.atleast_1d(t_of_ilambda(il_reg, p.hbar))
            lam0[regular] = np.atleast_1d(lambda0(il_reg, p.hbar))
            s_val[regular] = np.atleast_1d(entropy_from_ilambda(il_reg, p.hbar))
        else:
            il_reg = 0.5 / np.sqrt(i_reg)
            il[regular] = il_reg
            lam0[regular] = np.log(np.pi / il_reg)
            s_val[regular] = lam0[regular] + 1.0

    positive = i_val > 0
    e_r = np.full(n, np.inf)
    if np.any(positive):
        e_r[positive] = np.abs(e_val[positive]) / (np.sqrt(i_val[positive]) * p.omega_q)

    return {
        "i_uncert": i_val,
        "i_lambda": il,
        "energy": e_val,
        "e_r": e_r,
        "t_val": t_val,
        "lambda0": lam0,
        "entropy": s_val,
    }


def invariant_set(e: ExpectationState, p: ModelParams, mode: Mode = Mode.QUANTUM) -> InvariantSet:
    """All conserved and derived scalars of a single state."""
    cols = invariant_columns(e.as_array(), p, mode)
    return InvariantSet(**{key: float(val[0]) for key, val in cols.items()})
