"""
Pydantic models for the MaxEnt algebra of the semiquantum oscillator.
"""

from enum import Enum

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field


class Mode(str, Enum):
    """Statistics the second moments obey."""

    QUANTUM = "quantum"
    CLASSICAL = "classical"


class ModelParams(BaseModel):
    """Physical constants of the semiquantum Hamiltonian plus hbar."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    m_q: float = Field(1.0, gt=0, description="Quantum mass")
    m_cl: float = Field(1.0, gt=0, description="Classical mass")
    omega_q: float = Field(1.0, gt=0, description="Bare quantum frequency")
    e: float = Field(1.0, ge=0, description="Coupling constant")
    hbar: float = Field(1.0, ge=0, description="Planck constant")

    def omega_sq(self, a: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
        """Return omega^2 = omega_q^2 + e^2 A^2."""
        return self.omega_q**2 + self.e**2 * np.square(a)

    @property
    def ground_floor(self) -> float:
        """Minimum admissible I in quantum mode, hbar^2/4."""
        return 0.25 * self.hbar**2


class MultiplierState(BaseModel):
    """Lagrange multipliers of x^2, p^2, L together with the classical pair (A, P_A)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    lambda1: float = Field(..., description="Multiplier of x^2")
    lambda2: float = Field(..., description="Multiplier of p^2")
    lambda3: float = Field(..., description="Multiplier of L = xp + px")
    a: float = Field(0.0, description="Classical coordinate A")
    p_a: float = Field(0.0, description="Classical momentum P_A")

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.lambda1, self.lambda2, self.lambda3, self.a, self.p_a])

    @classmethod
    def from_array(cls, y: NDArray[np.float64]) -> "MultiplierState":
        return cls(
            lambda1=float(y[0]),
            lambda2=float(y[1]),
            lambda3=float(y[2]),
            a=float(y[3]),
            p_a=float(y[4]),
        )


class ExpectationState(BaseModel):
    """Second moments <x^2>, <p^2>, <L> together with the classical pair (A, P_A)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    x2: float = Field(..., gt=0, description="<x^2>")
    p2: float = Field(..., gt=0, description="<p^2>")
    l: float = Field(0.0, description="<L> with L = xp + px")  # noqa: E741
    a: float = Field(0.0, description="Classical coordinate A")
    p_a: float = Field(0.0, description="Classical momentum P_A")

    def as_array(self) -> NDArray[np.float64]:
        return np.array([self.x2, self.p2, self.l, self.a, self.p_a])

    @classmethod
    def from_array(cls, y: NDArray[np.float64]) -> "ExpectationState":
        return cls(x2=float(y[0]), p2=float(y[1]), l=float(y[2]), a=float(y[3]), p_a=float(y[4]))


class InvariantSet(BaseModel):
    """Conserved and derived scalars of a state."""

    model_config = ConfigDict(frozen=True)

    i_uncert: float = Field(..., description="I = <x^2><p^2> - <L>^2/4")
    i_lambda: float = Field(..., description="I_lambda, multiplier-space image of I")
    energy: float = Field(..., description="E = <H>")
    e_r: float = Field(..., description="Relative energy |E| / (sqrt(I) omega_q)")
    t_val: float = Field(..., description="T(I_lambda), equal to sqrt(I)")
    lambda0: float = Field(..., description="Normalization multiplier, ln Z")
    entropy: float = Field(..., description="Entropy S")


class SpectrumSummary(BaseModel):
    """Leading eigenvalues of rho and the spectral scalars of the full sequence."""

    model_config = ConfigDict(frozen=True)

    probs: tuple[float, ...] = Field(..., description="Stored prefix of the eigenvalues p_n")
    purity: float = Field(..., description="Tr rho^2")
    spectral_entropy: float = Field(..., description="-sum p_n ln p_n over the full spectrum")
    truncation_mass: float = Field(..., description="Probability not covered by probs")


class TransformCoeffs(BaseModel):
    """Coefficients of the normal-mode change of representation."""

    model_config = ConfigDict(frozen=True)

    lambda_v: float = Field(..., gt=0, description="sqrt(lambda1 lambda2) + lambda3")
    lambda_t: float = Field(..., gt=0, description="sqrt(lambda1 lambda2) - lambda3")

    @property
    def product(self) -> float:
        """lambda_V * lambda_T, which equals I_lambda^2."""
        return self.lambda_v * self.lambda_t


class ClassicalRelations(BaseModel):
    """Multipliers of the classical phase-space MaxEnt density."""

    model_config = ConfigDict(frozen=True)

    i_cl: float
    i_lambda_cl: float
    lambda1_cl: float
    lambda2_cl: float
    lambda3_cl: float
    lambda0_cl: float
