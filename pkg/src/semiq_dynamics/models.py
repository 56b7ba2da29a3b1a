"""
Data models for the dynamics engine.
"""

from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from semiq_maxent.models import ExpectationState
from semiq_maxent.models import InvariantSet
from semiq_maxent.models import Mode
from semiq_maxent.models import MultiplierState


class Method(str, Enum):
    """Integration scheme."""

    RK45 = "rk45"
    RK4 = "rk4"


class Representation(str, Enum):
    """Which variables the integrator evolves."""

    MULTIPLIERS = "multipliers"
    EXPECTATIONS = "expectations"


class IntegratorConfig(BaseModel):
    """Step control, horizon and drift audit settings."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    method: Method = Field(Method.RK45, description="rk45 adaptive or rk4 fixed step")
    rel_tol: float = Field(1e-10, gt=0, description="Requested relative accuracy of rk45")
    abs_tol: float = Field(1e-10, gt=0, description="Requested absolute accuracy of rk45")
    dt_init: float = Field(1e-3, gt=0, description="Initial step (rk45) or fixed step (rk4)")
    t_end: float = Field(100.0, gt=0, description="Integration horizon")
    sample_stride: int = Field(1, ge=1, description="Keep every n-th accepted step")
    drift_tol: float = Field(1e-6, gt=0, description="Abort when an invariant drifts further")


class DriftReport(BaseModel):
    """Worst relative drift of the conserved quantities over a trajectory."""

    model_config = ConfigDict(frozen=True)

    quantity: str = Field(..., description="Invariant audited for the representation")
    invariant_drift: float = Field(..., ge=0)
    i_drift: float = Field(..., ge=0)
    energy_drift: float = Field(..., ge=0)
    worst_energy_time: float = Field(0.0)

    @property
    def max_drift(self) -> float:
        return max(self.invariant_drift, self.i_drift, self.energy_drift)


class Trajectory(BaseModel):
    """
    Sampled solution of one integration.

    ``states`` holds the integrated variables (multipliers or expectation values) and
    ``evs`` the expectation values in both cases. ``invariants`` maps InvariantSet field
    names to per-sample arrays.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    representation: Representation
    mode: Mode
    times: np.ndarray
    states: np.ndarray
    evs: np.ndarray
    invariants: dict[str, np.ndarray]
    k_nl: float | None = None
    steps: int = 0

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    def invariant_at(self, index: int) -> InvariantSet:
        """InvariantSet of one sample."""
        return InvariantSet(**{k: float(v[index]) for k, v in self.invariants.items()})

    def ev_state(self, index: int) -> ExpectationState:
        return ExpectationState.from_array(self.evs[index])

    def multiplier_state(self, index: int) -> MultiplierState | None:
        rows = self.multiplier_array()
        if rows is None:
            return None
        return MultiplierState.from_array(rows[index])

    def multiplier_array(self) -> NDArray[np.float64] | None:
        """
        Multipliers per sample, or None when they are undefined.

        Expectation-value runs at the pure limit have no multiplier description.
        """
        if self.representation is Representation.MULTIPLIERS:
            return self.states
        il = self.invariants["i_lambda"]
        if not np.all(np.isfinite(il)):
            return None
        scale = il / np.sqrt(self.invariants["i_uncert"])
        x2, p2, l_val, a, p_a = self.evs.T
        return np.column_stack([p2 * scale, x2 * scale, -0.5 * l_val * scale, a, p_a])

    def summary(self) -> dict[str, Any]:
        return {
            "representation": self.representation.value,
            "mode": self.mode.value,
            "samples": len(self),
            "steps": self.steps,
            "t_final": self.final_time,
        }
