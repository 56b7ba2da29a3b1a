"""
Run configuration for the semiq command line.
"""

from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from semiq_chaos.models import LyapunovParams
from semiq_chaos.models import SweepThresholds
from semiq_dynamics.models import IntegratorConfig
from semiq_dynamics.models import Representation
from semiq_limit.models import LimitSchedule
from semiq_limit.models import Ordering
from semiq_limit.models import ReductionPattern
from semiq_limit.models import decreasing_positive
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import Mode
from semiq_maxent.models import ModelParams
from semiq_maxent.models import MultiplierState


class Experiment(str, Enum):
    """Experiment selected by the CLI command."""

    SIMULATE = "simulate"
    LIMIT = "limit"
    LYAPUNOV = "lyapunov"
    POINCARE = "poincare"
    SWEEP = "sweep"


def split_sequence(value: Any) -> Any:
    """Accept "1, 0.1, 0.01" for sequence fields."""
    if isinstance(value, str):
        return tuple(part.strip() for part in value.split(",") if part.strip())
    return value


class InitialConfig(BaseModel):
    """Initial state in either representation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    representation: Representation = Representation.EXPECTATIONS
    x2: float = Field(1.0, gt=0)
    p2: float = Field(1.0, gt=0)
    l: float = 0.0  # noqa: E741
    a: float = 0.0
    p_a: float = 0.5
    lambda1: float = Field(1.0, gt=0)
    lambda2: float = Field(1.0, gt=0)
    lambda3: float = 0.0

    @model_validator(mode="after")
    def validate_normalizable(self) -> "InitialConfig":
        if self.representation is Representation.MULTIPLIERS:
            if not self.lambda1 * self.lambda2 - self.lambda3**2 > 0:
                raise ValueError("initial multipliers need lambda1*lambda2 - lambda3^2 > 0")
        return self

    def to_state(self) -> MultiplierState | ExpectationState:
        if self.representation is Representation.MULTIPLIERS:
            return MultiplierState(
                lambda1=self.lambda1,
                lambda2=self.lambda2,
                lambda3=self.lambda3,
                a=self.a,
                p_a=self.p_a,
            )
        return ExpectationState(x2=self.x2, p2=self.p2, l=self.l, a=self.a, p_a=self.p_a)


class LimitConfig(BaseModel):
    """Limit schedule; the base state comes from the initial section."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    ordering: Ordering = Ordering.I_FIRST
    hbar_seq: tuple[float, ...] = (1.0, 0.1, 0.01, 0.001)
    i_gap_seq: tuple[float, ...] = (0.1, 0.01, 0.001, 0.0001)
    t_end: float = Field(50.0, gt=0)
    pattern: ReductionPattern = ReductionPattern.CORRELATION

    split_sequences = field_validator("hbar_seq", "i_gap_seq", mode="before")(split_sequence)
    check_sequences = field_validator("hbar_seq", "i_gap_seq")(decreasing_positive)

    def to_schedule(self, base: ExpectationState) -> LimitSchedule:
        return LimitSchedule(base_initial=base, **self.model_dump())


class PoincareConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    t_end: float = Field(1000.0, gt=0)


class SweepConfig(BaseModel):
    """E_r grid, pool size and label thresholds."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    e_r_grid: tuple[float, ...] = (1.5, 3.0, 6.0, 12.0, 24.0)
    workers: int = Field(1, ge=1)
    threshold_low: float = Field(1e-3, gt=0)
    threshold_high: float = Field(5e-2, gt=0)
    classical_tol: float = Field(0.2, gt=0)

    split_grid = field_validator("e_r_grid", mode="before")(split_sequence)

    @field_validator("e_r_grid")
    @classmethod
    def validate_grid(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if not v:
            raise ValueError("e_r_grid must not be empty")
        if any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError("e_r_grid must be strictly increasing")
        if any(x <= 0 for x in v):
            raise ValueError("e_r_grid entries must be positive")
        return v

    def thresholds(self) -> SweepThresholds:
        return SweepThresholds(
            threshold_low=self.threshold_low,
            threshold_high=self.threshold_high,
            classical_tol=self.classical_tol,
        )


class OutputConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    path: Path = Path("semiq_output.csv")


class RunConfig(BaseModel):
    """Complete, validated description of one CLI run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    experiment: Experiment = Experiment.SIMULATE
    model: ModelParams = Field(default_factory=ModelParams)
    mode: Mode = Mode.QUANTUM
    initial: InitialConfig = Field(default_factory=InitialConfig)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    limit: LimitConfig = Field(default_factory=LimitConfig)
    lyapunov: LyapunovParams = Field(default_factory=LyapunovParams)
    poincare: PoincareConfig = Field(default_factory=PoincareConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    seed: int = 12345

    @model_validator(mode="after")
    def validate_multipliers_need_hbar(self) -> "RunConfig":
        """Multipliers are undefined at hbar = 0; such runs must use expectation values."""
        if (
            self.experiment is Experiment.SIMULATE
            and self.mode is Mode.QUANTUM
            and self.model.hbar == 0
            and self.initial.representation is Representation.MULTIPLIERS
        ):
            raise ValueError(
                "model.hbar = 0 requires initial.representation = expectations for simulate"
            )
        return self


def flatten(data: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    """Dotted-key view of a nested dict."""
    flat: dict[str, Any] = {}
    for key, value in data.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, f"{dotted}."))
        else:
            flat[dotted] = value
    return flat
