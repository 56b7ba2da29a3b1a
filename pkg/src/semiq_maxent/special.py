"""
Numerically stable relations in the dimensionless combination z = hbar * I_lambda.

Every function accepts a float or a numpy array and returns the same shape. Forms
are chosen so nothing overflows near the pure limit (z large) and nothing cancels
near the classical limit (z small).
"""

import numpy as np
from numpy.typing import ArrayLike
from numpy.typing import NDArray

from semiq_core.exceptions import DomainError

EPS_PURE = 1e-12
# beyond this z every exp(-2z) term is below double resolution
ASYMPTOTIC_Z = 700.0

Real = float | NDArray[np.float64]


def _finish(x: NDArray[np.float64]) -> Real:
    if np.ndim(x) == 0:
        return float(x)
    return x


def _require_positive(name: str, value: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(value, dtype=float)
    if not np.all(arr > 0):
        raise DomainError(f"{name} must be positive", f"got {value!r}")
    return arr


def _require_hbar(hbar: float, strictly_positive: bool = False) -> None:
    if hbar < 0 or (strictly_positive and hbar == 0) or not np.isfinite(hbar):
        bound = "> 0" if strictly_positive else ">= 0"
        raise DomainError(f"hbar must be {bound}", f"got {hbar!r}")


def pure_threshold(hbar: float) -> float:
    """I at or below which the multiplier representation is treated as diverged."""
    return 0.25 * hbar**2 * (1.0 + EPS_PURE)


def t_of_ilambda(i_lambda: ArrayLike, hbar: float) -> Real:
    """T(I_lambda) = (hbar/2) coth(hbar I_lambda); 1/(2 I_lambda) when hbar = 0."""
    il = _require_positive("I_lambda", i_lambda)
    _require_hbar(hbar)
    if hbar == 0:
        return _finish(0.5 / il)
    z = hbar * il
    out = np.where(z > ASYMPTOTIC_Z, 0.5 * hbar, 0.5 * hbar / np.tanh(np.minimum(z, ASYMPTOTIC_Z)))
    return _finish(out)


def lambda0(i_lambda: ArrayLike, hbar: float) -> Real:
    """lambda_0 = -ln(e^z - e^-z), evaluated as -z - ln(1 - e^-2z)."""
    il = _require_positive("I_lambda", i_lambda)
    _require_hbar(hbar, strictly_positive=True)
    z = hbar * il
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.where(z > ASYMPTOTIC_Z, -z, -z - np.log(-np.expm1(-2.0 * z)))
    return _finish(out)


def ilambda_from_i(i_uncert: ArrayLike, hbar: float) -> Real:
    """Invert T(I_lambda) = sqrt(I): I_lambda = atanh(hbar / (2 sqrt(I))) / hbar."""
    _require_hbar(hbar)
    i_arr = np.asarray(i_uncert, dtype=float)
    if hbar == 0:
        i_arr = _require_positive("I", i_arr)
        return _finish(0.5 / np.sqrt(i_arr))
    half = 0.5 * hbar
    if not np.all(i_arr > half * half):
        raise DomainError("I must exceed hbar^2/4", f"got I={i_uncert!r}, hbar={hbar!r}")
    root = np.sqrt(i_arr)
    ratio = half / root
    with np.errstate(divide="ignore", invalid="ignore"):
        # near the floor the gap I - hbar^2/4 is taken directly, not as 1 - ratio
        near = 0.5 / hbar * np.log((root + half) ** 2 / (i_arr - half * half))
        far = np.arctanh(np.minimum(ratio, 0.5)) / hbar
    return _finish(np.where(ratio < 0.5, far, near))


def ilambda_condition(i_lambda: ArrayLike, hbar: float) -> Real:
    """
    |d ln I_lambda / d ln I| = sinh(2z) / (4z), 1/2 in the classical limit.

    Relative errors in I reach I_lambda multiplied by this factor, so I_lambda read
    back from moments near the pure floor carries the rounding of I times it.
    """
    il = _require_positive("I_lambda", i_lambda)
    _require_hbar(hbar)
    z = np.minimum(hbar * il, 0.5 * ASYMPTOTIC_Z)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(z > 0, np.sinh(2.0 * z) / (4.0 * z), 0.5)
    return _finish(out)


def purity(i_lambda: ArrayLike, hbar: float) -> Real:
    """Tr rho^2 = tanh(hbar I_lambda)."""
    il = _require_positive("I_lambda", i_lambda)
    _require_hbar(hbar, strictly_positive=True)
    return _finish(np.tanh(hbar * il))


def entropy_from_ilambda(i_lambda: ArrayLike, hbar: float) -> Real:
    """S = lambda_0 + 2 I_lambda T(I_lambda), clamped at the pure-state value 0."""
    il = _require_positive("I_lambda", i_lambda)
    _require_hbar(hbar, strictly_positive=True)
    z = hbar * il
    finite_il = np.where(z > ASYMPTOTIC_Z, 1.0, il)
    s = np.asarray(lambda0(finite_il, hbar)) + 2.0 * finite_il * np.asarray(
        t_of_ilambda(finite_il, hbar)
    )
    return _finish(np.where(z > ASYMPTOTIC_Z, 0.0, np.maximum(s, 0.0)))


def spectral_entropy(i_lambda: ArrayLike, hbar: float) -> Real:
    """-sum p_n ln p_n of p_n = (1 - q) q^n, q = e^(-2z), in closed form."""
    il = _require_positive("I_lambda", i_lambda)
    _require_hbar(hbar, strictly_positive=True)
    z = np.minimum(hbar * il, ASYMPTOTIC_Z)
    one_minus_q = -np.expm1(-2.0 * z)
    out = -np.log(one_minus_q) + 2.0 * z * np.exp(-2.0 * z) / one_minus_q
    return _finish(np.where(hbar * il >= ASYMPTOTIC_Z, 0.0, out))
