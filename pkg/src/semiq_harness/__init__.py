"""
Command-line harness for semiq experiments.

Parses key = value run configurations, runs simulate / limit / lyapunov / poincare / sweep
and writes deterministic CSV artifacts with a flat manifest beside them.
"""

from .artifacts import SIMULATE_HEADER
from .artifacts import format_value
from .config_file import parse_config
from .models import Experiment
from .models import RunConfig
from .runner import ExitCode
from .runner import ExperimentRunner
from .runner import RunOutcome
from .runner import exit_code_for
from .runner import run

__all__ = [
    "SIMULATE_HEADER",
    "Experiment",
    "ExitCode",
    "ExperimentRunner",
    "RunConfig",
    "RunOutcome",
    "exit_code_for",
    "format_value",
    "parse_config",
    "run",
]
