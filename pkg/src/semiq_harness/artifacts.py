"""
CSV and manifest writers.

Floats are written with 17 significant digits so every value reads back bit-exactly.
"""

import csv
import platform
from collections.abc import Iterable
from collections.abc import Sequence
from enum import Enum
from importlib.metadata import PackageNotFoundError
from importlib.metadata import version
from pathlib import Path
from typing import Any

import numpy as np

from semiq_chaos.models import LyapunovResult
from semiq_chaos.models import PoincareSection
from semiq_chaos.models import RegimeSweep
from semiq_core import __version__
from semiq_dynamics.models import Trajectory
from semiq_limit.models import LimitReport

SIMULATE_HEADER = (
    "t", "lambda1", "lambda2", "lambda3", "A", "P_A",
    "x2", "p2", "L", "I", "I_lambda", "E", "E_r", "S",
)  # fmt: skip
LIMIT_HEADER = (
    "step", "hbar", "gap", "I", "I_lambda", "hbar_I_lambda",
    "purity", "S", "lambda0", "p0", "distance",
)  # fmt: skip
LYAPUNOV_HEADER = ("t", "lambda_max")
POINCARE_HEADER = ("t", "x2", "p2", "L", "P_A", "A_residual")
SWEEP_HEADER = (
    "index", "E_r", "I", "reachable", "label", "lambda_max", "lambda_uncertainty",
    "converged", "n_points", "fill_fraction", "invariant_drift", "excess_rate",
    "fluctuation_share", "reason",
)  # fmt: skip

Row = Sequence[Any]


def format_value(value: Any) -> str:
    """Text form of one field; None becomes an empty field."""
    if value is None:
        return ""
    if isinstance(value, bool | np.bool_):
        return "true" if value else "false"
    if isinstance(value, int | np.integer):
        return str(int(value))
    if isinstance(value, float | np.floating):
        return format(float(value), ".17g")
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, list | tuple):
        return ", ".join(format_value(v) for v in value)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Row]) -> int:
    """Write a header and rows; returns the number of data rows."""
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    return count


def manifest_path(csv_path: Path) -> Path:
    return csv_path.with_name(csv_path.name + ".manifest")


def write_manifest(path: Path, entries: dict[str, Any]) -> None:
    """Flat ``key = value`` file in insertion order."""
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{key} = {format_value(value)}" for key, value in entries.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _package_version(name: str) -> str:
    try:
        return version(name)
    except PackageNotFoundError:
        return "unknown"


def versions() -> dict[str, str]:
    return {
        "semiq": __version__,
        "numpy": np.__version__,
        "scipy": _package_version("scipy"),
        "pydantic": _package_version("pydantic"),
        "python": platform.python_version(),
    }


def simulate_rows(traj: Trajectory) -> Iterable[Row]:
    """One row per sample; multiplier fields are empty when multipliers are undefined."""
    multipliers = traj.multiplier_array()
    inv = traj.invariants
    for i, t in enumerate(traj.times):
        x2, p2, l_val, a, p_a = traj.evs[i]
        lambdas = (None, None, None) if multipliers is None else tuple(multipliers[i, :3])
        yield (
            t, *lambdas, a, p_a, x2, p2, l_val,
            inv["i_uncert"][i], inv["i_lambda"][i], inv["energy"][i], inv["e_r"][i],
            inv["entropy"][i],
        )  # fmt: skip


def limit_rows(report: LimitReport) -> Iterable[Row]:
    for step, rec in enumerate(report.records):
        yield (
            step, rec.hbar, rec.gap, rec.i_uncert, rec.i_lambda, rec.hbar_i_lambda,
            rec.purity, rec.entropy, rec.lambda0, rec.p0, rec.distance,
        )  # fmt: skip


def lyapunov_rows(result: LyapunovResult) -> Iterable[Row]:
    yield from zip(result.times, result.convergence_series, strict=True)


def poincare_rows(section: PoincareSection) -> Iterable[Row]:
    for t, point, residual in zip(
        section.crossing_times, section.points, section.residual_a, strict=True
    ):
        yield (t, *point, residual)


def sweep_rows(sweep: RegimeSweep) -> Iterable[Row]:
    for pt in sweep.points:
        section = pt.section
        yield (
            pt.index, pt.e_r, pt.i_uncert, pt.reachable, pt.label, pt.lambda_max,
            pt.lyapunov_uncertainty, pt.converged,
            None if section is None else section.n_points,
            None if section is None else section.fill_fraction,
            pt.invariant_drift, pt.excess_rate, pt.fluctuation_share, pt.reason,
        )  # fmt: skip
