"""
Core 패키지
예외, 에러 핸들러 등 핵심 기능
"""
from COSETLAB.core.exceptions import (
    CosetLabException,
    DomainError,
    InvalidDistributionError,
    AxisError,
    DimensionMismatchError,
    ModulusMismatchError,
    ChannelParseError,
    GuardExceededError,
    OptimizerNonConvergence,
    UsageError,
    EXIT_USAGE,
    EXIT_DATAERR,
    EXIT_SOFTWARE,
)

from COSETLAB.core.error_handler import handle_exception

__all__ = [
    # Exceptions
    "CosetLabException",
    "DomainError",
    "InvalidDistributionError",
    "AxisError",
    "DimensionMismatchError",
    "ModulusMismatchError",
    "ChannelParseError",
    "GuardExceededError",
    "OptimizerNonConvergence",
    "UsageError",
    "EXIT_USAGE",
    "EXIT_DATAERR",
    "EXIT_SOFTWARE",

    # Error Handler
    "handle_exception",
]
