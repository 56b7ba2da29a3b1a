"""
Structured logging for semiq runs.

Every record of a run carries the run context (experiment, seed, integrator
method, mode) bound through structlog contextvars, and numpy values are turned
into plain Python numbers before rendering.
"""

import logging
import sys
from collections.abc import Iterator
from collections.abc import MutableMapping
from contextlib import contextmanager
from typing import Any
from typing import cast

import numpy as np
import structlog
from structlog.typing import FilteringBoundLogger

from .config import get_settings
from .exceptions import SemiqError

# Numeric attributes the semiq exceptions carry besides message and details
ERROR_ATTRIBUTES = (
    "quantity",
    "drift",
    "time",
    "tolerance",
    "step",
    "variation",
    "line_number",
    "invariant",
)


def plain_numbers(
    logger: Any, method_name: str, event_dict: MutableMapping[str, Any]
) -> MutableMapping[str, Any]:
    """Replace numpy scalars and arrays in the event with Python values."""
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            event_dict[key] = value.tolist()
    return event_dict


def setup_logging() -> FilteringBoundLogger:
    """
    Configure structured logging on stderr.

    Development environments get the console renderer, everything else JSON lines.
    stdout stays free for command output.

    Returns:
        Configured structlog logger instance
    """
    settings = get_settings()

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, settings.log_level),
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso"),
            plain_numbers,
            structlog.processors.StackInfoRenderer(),
            cast(
                Any,
                (
                    structlog.dev.ConsoleRenderer()
                    if settings.is_development
                    else structlog.processors.JSONRenderer()
                ),
            ),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(getattr(logging, settings.log_level)),
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    return structlog.get_logger("semiq")  # type: ignore[no-any-return]


def get_logger(name: str = "semiq") -> FilteringBoundLogger:
    """Named structlog logger."""
    return structlog.get_logger(name)  # type: ignore[no-any-return]


@contextmanager
def run_context(experiment: str, seed: int, method: str, mode: str) -> Iterator[None]:
    """
    Bind the identity of a run to every record logged inside the block.

    Args:
        experiment: Experiment name (simulate, limit, lyapunov, poincare, sweep)
        seed: Seed of the perturbation directions
        method: Integrator method
        mode: quantum or classical
    """
    with structlog.contextvars.bound_contextvars(
        experiment=experiment, seed=seed, method=method, mode=mode
    ):
        yield


def log_function_call(logger: FilteringBoundLogger, function_name: str, **kwargs: Any) -> None:
    """Log a function call with parameters."""
    logger.debug("Function called", function=function_name, parameters=kwargs)


def error_fields(error: BaseException) -> dict[str, Any]:
    """Structured fields of an error; semiq errors add their details and numbers."""
    fields: dict[str, Any] = {"error_type": type(error).__name__}
    if not isinstance(error, SemiqError):
        fields["error_message"] = str(error)
        return fields
    fields["error_message"] = error.message
    if error.details:
        fields["error_details"] = error.details
    for name in ERROR_ATTRIBUTES:
        if hasattr(error, name):
            fields[name] = getattr(error, name)
    return fields


def log_error_with_context(
    logger: FilteringBoundLogger, error: BaseException, context: dict[str, Any] | None = None
) -> None:
    """
    Log an error with its structured fields and additional context.

    Args:
        logger: Logger instance
        error: Exception that occurred
        context: Additional context information
    """
    log_data = error_fields(error)
    if context:
        log_data.update(context)

    logger.error("Error occurred", **log_data)


class LoggingMixin:
    """Mixin to add structured logging to classes."""

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        self.logger: FilteringBoundLogger = get_logger(self.__class__.__name__)

    def log_method_call(self, method_name: str, **kwargs: Any) -> None:
        """Log a method call with parameters."""
        log_function_call(self.logger, f"{self.__class__.__name__}.{method_name}", **kwargs)
