"""Half-line dispersive IBVP solver built on the unified transform method."""

from ._core import *  # noqa: F401,F403
from ._core import (
    AccuracyError,
    ConfigError,
    DomainError,
    NumericalError,
    UTMError,
)

__version__ = "0.1.0"
