"""
Data models for the classical-limit studies.
"""

from enum import Enum

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator

from semiq_maxent.models import ExpectationState


class Ordering(str, Enum):
    """Which limit is taken first."""

    HBAR_FIRST = "hbar_first"
    I_FIRST = "i_first"


class ReductionPattern(str, Enum):
    """How a base state is moved to a new value of I at fixed energy."""

    CORRELATION = "correlation"
    PROPORTIONAL = "proportional"


def decreasing_positive(v: tuple[float, ...]) -> tuple[float, ...]:
    """Sequences must be nonempty, positive and strictly decreasing."""
    if not v:
        raise ValueError("sequence must not be empty")
    if any(x <= 0 for x in v):
        raise ValueError("sequence entries must be positive")
    if any(b >= a for a, b in zip(v, v[1:], strict=False)):
        raise ValueError("sequence must be strictly decreasing")
    return v


def default_base() -> ExpectationState:
    return ExpectationState(x2=1.0, p2=1.0, l=0.0, a=0.0, p_a=0.2)


class LimitSchedule(BaseModel):
    """Sequences of hbar and relative gaps (I - hbar^2/4)/hbar^2 walked by a limit run."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    ordering: Ordering = Ordering.I_FIRST
    hbar_seq: tuple[float, ...] = (1.0, 0.1, 0.01, 0.001)
    i_gap_seq: tuple[float, ...] = (0.1, 0.01, 0.001, 0.0001)
    base_initial: ExpectationState = Field(default_factory=default_base)
    t_end: float = Field(50.0, gt=0)
    pattern: ReductionPattern = ReductionPattern.CORRELATION

    check_sequences = field_validator("hbar_seq", "i_gap_seq")(decreasing_positive)


class LimitRecord(BaseModel):
    """One step of a limit run."""

    model_config = ConfigDict(frozen=True)

    hbar: float
    gap: float | None = None
    i_uncert: float
    i_lambda: float
    hbar_i_lambda: float
    purity: float
    entropy: float
    lambda0: float
    p0: float
    distance: float | None = None


class LimitReport(BaseModel):
    """Records of a limit run and the trends they establish."""

    model_config = ConfigDict(frozen=True)

    ordering: Ordering
    records: list[LimitRecord]
    flags: dict[str, bool] = Field(default_factory=dict)
    fitted_order: float | None = Field(
        None, description="Order of |I_lambda - 1/(2 sqrt I)| in hbar"
    )

    @property
    def final(self) -> LimitRecord:
        return self.records[-1]

    @property
    def verdict(self) -> bool:
        return all(self.flags.values())


class ConvergenceRecord(BaseModel):
    """Distance between a semiquantum trajectory and the classical reference."""

    model_config = ConfigDict(frozen=True)

    i_uncert: float
    distance: float


class ConvergenceReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: list[ConvergenceRecord]
    monotone: bool


class GroundStateVerdict(BaseModel):
    """Second moments produced by the pure-state density matrix."""

    model_config = ConfigDict(frozen=True)

    hbar: float
    mode_x2: float
    mode_p2: float
    mode_l: float
    i_uncert: float
    expected: float
    purity: float
    ok: bool


class FactorizationResult(BaseModel):
    """Residuals of point-particle powers against the expectation-value trajectory."""

    model_config = ConfigDict(frozen=True)

    residuals: dict[str, float]
    max_residual: float
    t_end: float
    steps: int
