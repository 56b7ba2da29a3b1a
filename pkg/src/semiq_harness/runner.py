"""
Experiment orchestration: run a RunConfig, write its CSV and manifest, map errors to exit codes.
"""

import math
from enum import IntEnum
from pathlib import Path
from typing import Any

from pydantic import BaseModel
from pydantic import ConfigDict

from semiq_chaos.lyapunov import LyapunovEstimator
from semiq_chaos.poincare import PoincareSectioner
from semiq_chaos.poincare import summarize_section
from semiq_chaos.sweep import RegimeSweeper
from semiq_core.config import get_settings
from semiq_core.exceptions import ConfigurationError
from semiq_core.exceptions import UnreachableRegimeError
from semiq_core.logging import LoggingMixin
from semiq_core.logging import get_logger
from semiq_core.logging import log_error_with_context
from semiq_core.logging import run_context
from semiq_dynamics.integrator import integrate
from semiq_dynamics.integrator import prepare_initial
from semiq_dynamics.models import Representation
from semiq_dynamics.monitor import monitor_invariants
from semiq_limit.limits import run_limit
from semiq_maxent.algebra import invariant_set
from semiq_maxent.models import ExpectationState
from semiq_maxent.models import InvariantSet

from . import artifacts
from .models import Experiment
from .models import RunConfig
from .models import flatten

logger = get_logger(__name__)


class ExitCode(IntEnum):
    """Process exit codes of the semiq command."""

    SUCCESS = 0
    CONFIG = 1
    NUMERICAL = 2
    UNREACHABLE = 3


CATEGORIES = {
    ExitCode.CONFIG: "Configuration error",
    ExitCode.NUMERICAL: "Numerical error",
    ExitCode.UNREACHABLE: "Unreachable regime",
}


def exit_code_for(error: BaseException) -> ExitCode:
    """Exit code of an error; anything not configuration or regime related is numerical."""
    if isinstance(error, ConfigurationError):
        return ExitCode.CONFIG
    if isinstance(error, UnreachableRegimeError):
        return ExitCode.UNREACHABLE
    return ExitCode.NUMERICAL


class RunOutcome(BaseModel):
    """What a run produced, or why it failed."""

    model_config = ConfigDict(frozen=True)

    experiment: Experiment
    exit_code: ExitCode
    csv_path: Path | None = None
    manifest_path: Path | None = None
    rows: int = 0
    error: str | None = None

    @property
    def category(self) -> str | None:
        return CATEGORIES.get(self.exit_code)


def resolve_output(path: Path) -> Path:
    """Relative output paths resolve against SEMIQ_OUTPUT_DIR."""
    if path.is_absolute():
        return path
    return get_settings().output_dir / path


def frozen_k_nl(initial: InvariantSet, k_value: float | None) -> float | None:
    """k_nl of the run; None when the initial state sits at the pure limit."""
    if k_value is not None:
        return k_value
    if math.isfinite(initial.i_lambda) and initial.i_lambda > 0:
        return initial.t_val / initial.i_lambda
    return None


class ExperimentRunner(LoggingMixin):
    """Run the experiment a RunConfig selects and write its artifacts."""

    def __init__(self, config: RunConfig):
        super().__init__()
        self.config = config
        self.csv_path = resolve_output(config.output.path)
        self.initial = config.initial.to_state()
        y0, _, _ = prepare_initial(
            self.initial, config.model, Representation.EXPECTATIONS, config.mode
        )
        self.initial_evs = ExpectationState.from_array(y0)
        self.initial_invariants = invariant_set(self.initial_evs, config.model, config.mode)

    def run(self) -> RunOutcome:
        """
        Execute the experiment.

        Raises:
            SemiqError: any module error; the caller maps it with exit_code_for
        """
        cfg = self.config
        self.log_method_call("run", experiment=cfg.experiment.value, output=str(self.csv_path))
        handlers = {
            Experiment.SIMULATE: self._simulate,
            Experiment.LIMIT: self._limit,
            Experiment.LYAPUNOV: self._lyapunov,
            Experiment.POINCARE: self._poincare,
            Experiment.SWEEP: self._sweep,
        }
        header, rows, results, k_value = handlers[cfg.experiment]()
        n_rows = artifacts.write_csv(self.csv_path, header, rows)

        manifest = artifacts.manifest_path(self.csv_path)
        artifacts.write_manifest(manifest, self._manifest(results, k_value, n_rows))

        self.logger.info(
            "Experiment finished",
            experiment=cfg.experiment.value,
            rows=n_rows,
            csv=str(self.csv_path),
        )
        return RunOutcome(
            experiment=cfg.experiment,
            exit_code=ExitCode.SUCCESS,
            csv_path=self.csv_path,
            manifest_path=manifest,
            rows=n_rows,
        )

    def _manifest(
        self, results: dict[str, Any], k_value: float | None, n_rows: int
    ) -> dict[str, Any]:
        cfg = self.config
        entries: dict[str, Any] = {"experiment": cfg.experiment, "seed": cfg.seed}
        entries.update(flatten(cfg.model_dump(mode="json"), "config."))
        entries["k_nl"] = frozen_k_nl(self.initial_invariants, k_value)
        entries.update(flatten(self.initial_invariants.model_dump(), "initial."))
        entries.update(flatten(results))
        entries["rows"] = n_rows
        entries.update(flatten(artifacts.versions(), "version."))
        return entries

    def _simulate(self) -> tuple[tuple[str, ...], Any, dict[str, Any], float | None]:
        cfg = self.config
        traj = integrate(
            self.initial, cfg.model, cfg.integrator, cfg.initial.representation, cfg.mode
        )
        drift = monitor_invariants(traj, cfg.model)
        results = {
            "drift": drift.model_dump(),
            "result": traj.summary(),
        }
        return artifacts.SIMULATE_HEADER, artifacts.simulate_rows(traj), results, traj.k_nl

    def _limit(self) -> tuple[tuple[str, ...], Any, dict[str, Any], float | None]:
        cfg = self.config
        report = run_limit(cfg.limit.to_schedule(self.initial_evs), cfg.model, cfg.integrator)
        results = {
            "result": {
                "ordering": report.ordering.value,
                "verdict": report.verdict,
                "fitted_order": report.fitted_order,
            },
            "flags": report.flags,
        }
        return artifacts.LIMIT_HEADER, artifacts.limit_rows(report), results, None

    def _lyapunov(self) -> tuple[tuple[str, ...], Any, dict[str, Any], float | None]:
        cfg = self.config
        estimator = LyapunovEstimator(
            cfg.model,
            cfg.integrator,
            cfg.lyapunov,
            cfg.seed,
            cfg.initial.representation,
            cfg.mode,
        )
        result = estimator.run(self.initial)
        results = {
            "drift": {
                "invariant_drift": result.invariant_drift,
                "energy_drift": result.energy_drift,
            },
            "result": {
                "lambda_max": result.lambda_max,
                "uncertainty": result.uncertainty,
                "variation": result.variation,
                "converged": result.converged,
                "positive_fraction": result.positive_fraction,
            },
        }
        return artifacts.LYAPUNOV_HEADER, artifacts.lyapunov_rows(result), results, None

    def _poincare(self) -> tuple[tuple[str, ...], Any, dict[str, Any], float | None]:
        cfg = self.config
        section_cfg = cfg.integrator.model_copy(update={"t_end": cfg.poincare.t_end})
        sectioner = PoincareSectioner(
            cfg.model, section_cfg, cfg.initial.representation, cfg.mode
        )
        section = sectioner.run(self.initial)
        summary = summarize_section(section.points)
        results = {
            "result": {
                **summary.model_dump(),
                "max_residual_a": float(section.residual_a.max()),
            }
        }
        return artifacts.POINCARE_HEADER, artifacts.poincare_rows(section), results, None

    def _sweep(self) -> tuple[tuple[str, ...], Any, dict[str, Any], float | None]:
        cfg = self.config
        sweeper = RegimeSweeper(
            cfg.model,
            cfg.integrator,
            cfg.lyapunov,
            cfg.sweep.thresholds(),
            cfg.poincare.t_end,
            cfg.seed,
            cfg.sweep.workers,
            cfg.mode,
        )
        sweep = sweeper.run(self.initial_evs, cfg.sweep.e_r_grid)
        drifts = [pt.invariant_drift for pt in sweep.points if pt.invariant_drift is not None]
        results = {
            "drift": {"max_invariant_drift": max(drifts) if drifts else None},
            "result": {
                "energy": sweep.energy,
                "reachable": sum(pt.reachable for pt in sweep.points),
                "labels": [label.value for label in sweep.labels],
            },
        }
        return artifacts.SWEEP_HEADER, artifacts.sweep_rows(sweep), results, None


def run(config: RunConfig) -> RunOutcome:
    """
    Run one experiment and report its exit code.

    Every error is caught, logged and mapped through exit_code_for. Records logged
    during the run carry the experiment, seed, integrator method and mode.
    """
    with run_context(
        config.experiment.value, config.seed, config.integrator.method.value, config.mode.value
    ):
        try:
            return ExperimentRunner(config).run()
        except Exception as e:
            log_error_with_context(logger, e, {"exit_code": int(exit_code_for(e))})
            return RunOutcome(
                experiment=config.experiment,
                exit_code=exit_code_for(e),
                error=str(e),
            )
