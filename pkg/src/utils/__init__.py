"""
Utility functions and helpers for the skew cyclic code toolkit.
"""

from .logger import get_logger, setup_logging
from .errors import GuardExceededError, ParseError, SkewCodeError, ValidationError
from .helpers import check_guard, digit_rows, split_evenly

__all__ = [
    "get_logger",
    "setup_logging",
    "GuardExceededError",
    "ParseError",
    "SkewCodeError",
    "ValidationError",
    "check_guard",
    "digit_rows",
    "split_evenly",
]
