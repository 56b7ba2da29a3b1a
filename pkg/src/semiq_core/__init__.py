"""
semiq core package

Shared settings, exception types and structured logging for every semiq component.
"""

__version__ = "0.1.0"
__author__ = "semiq developers"

from .config import Settings
from .config import get_settings
from .exceptions import ConfigurationError
from .exceptions import DomainError
from .exceptions import NumericalError
from .exceptions import PureLimitError
from .exceptions import SemiqError
from .exceptions import UnreachableRegimeError
from .logging import LoggingMixin
from .logging import get_logger
from .logging import setup_logging

__all__ = [
    "Settings",
    "get_settings",
    "ConfigurationError",
    "DomainError",
    "NumericalError",
    "PureLimitError",
    "SemiqError",
    "UnreachableRegimeError",
    "LoggingMixin",
    "get_logger",
    "setup_logging",
    "__version__",
]
