"""
Data models for chaos quantifiers and regime sweeps.
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator


class RegimeLabel(str, Enum):
    """Dynamical region of a sweep point."""

    QUASICLASSICAL = "quasiclassical"
    TRANSITIONAL = "transitional"
    CLASSICAL = "classical"
    UNREACHABLE = "unreachable"


class LyapunovParams(BaseModel):
    """Benettin run parameters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    renorm_dt: float = Field(1.0, gt=0)
    horizon: float = Field(1000.0, gt=0)
    d0: float = Field(1e-8, ge=1e-10, le=1e-6)
    raise_on_nonconvergence: bool = True

    @field_validator("horizon")
    @classmethod
    def validate_horizon(cls, v: float) -> float:
        if not np.isfinite(v):
            raise ValueError("horizon must be finite")
        return v


class LyapunovResult(BaseModel):
    """Maximal Lyapunov exponent with its running estimate."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_max: float
    uncertainty: float = Field(
        ..., description="max - min of the running estimate over the last 10%"
    )
    variation: float
    converged: bool
    times: np.ndarray
    convergence_series: np.ndarray
    renorm_interval: float
    horizon: float
    d0: float
    seed: int
    invariant_drift: float
    energy_drift: float

    @property
    def positive_fraction(self) -> float:
        return float(np.mean(self.convergence_series > 0))

    @property
    def log_growth(self) -> np.ndarray:
        """Accumulated ln(d/d0) at each renormalization."""
        return self.convergence_series * self.times

    @property
    def excess_rate(self) -> float:
        """
        Slope of ln(d/d0) - ln(t) over the second half of the horizon.

        Regular motion separates linearly in t, which leaves lambda_max at about
        ln(t)/t over a finite horizon while this slope goes to zero. Chaotic motion
        keeps a slope close to lambda_max.
        """
        late = self.times >= 0.5 * self.times[-1]
        if np.count_nonzero(late) < 2:
            return self.lambda_max
        t = self.times[late]
        slope = np.polyfit(t, self.log_growth[late] - np.log(t), 1)[0]
        return float(slope)


class SectionSummary(BaseModel):
    """Point count and fill fraction of a 20x20 grid over (x2, P_A)."""

    model_config = ConfigDict(frozen=True)

    n_points: int
    fill_fraction: float


class PoincareSection(BaseModel):
    """Upward crossings of the plane A = 0."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: np.ndarray = Field(..., description="Rows of (x2, p2, L, P_A)")
    crossing_times: np.ndarray
    residual_a: np.ndarray = Field(..., description="|A| at each refined crossing")
    crossing_tol: float

    def __len__(self) -> int:
        return len(self.crossing_times)


class SweepThresholds(BaseModel):
    """Calibration constants for regime labels."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    threshold_low: float = Field(1e-3, gt=0)
    threshold_high: float = Field(5e-2, gt=0)
    classical_tol: float = Field(
        0.2, gt=0, description="Largest fluctuation share omega_q sqrt(I)/|E| labelled classical"
    )


class SweepPoint(BaseModel):
    """One grid point of a regime sweep."""

    model_config = ConfigDict(frozen=True)

    index: int
    e_r: float
    i_uncert: float
    reachable: bool
    label: RegimeLabel
    lambda_max: float | None = None
    lyapunov_uncertainty: float | None = None
    converged: bool | None = None
    section: SectionSummary | None = None
    invariant_drift: float | None = None
    excess_rate: float | None = None
    fluctuation_share: float | None = None
    reason: str | None = None


class RegimeSweep(BaseModel):
    """Sweep results ordered by grid index."""

    model_config = ConfigDict(frozen=True)

    e_r_values: tuple[float, ...]
    energy: float
    points: list[SweepPoint]

    @field_validator("e_r_values")
    @classmethod
    def validate_increasing(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if not v:
            raise ValueError("grid must not be empty")
        if any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError("grid must be strictly increasing")
        return v

    @property
    def labels(self) -> list[RegimeLabel]:
        return [pt.label for pt in self.points]
