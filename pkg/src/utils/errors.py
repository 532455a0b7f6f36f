"""
Custom error classes for the skew cyclic code toolkit.

Every error carries a machine readable ``error_code`` and the process
``exit_code`` the command line front end reports for it.
"""
from typing import Any, Dict, Optional


class SkewCodeError(Exception):
    """Base exception class for toolkit errors."""

    exit_code: int = 2

    def __init__(self, message: str, error_code: str = None, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.error_code = error_code or "SKEWCODE_ERROR"
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        return {"error": self.error_code, "message": self.message, "details": self.details}


class ValidationError(SkewCodeError):
    """Exception for invalid parameters or inputs."""

    def __init__(self, message: str, field: str = None, **kwargs):
        self.field = field
        super().__init__(message, error_code="VALIDATION_ERROR", **kwargs)


class ParseError(SkewCodeError):
    """Exception for text or document parse failures."""

    def __init__(self, message: str, text: str = None, **kwargs):
        self.text = text
        super().__init__(message, error_code="PARSE_ERROR", **kwargs)


class RingMismatchError(SkewCodeError):
    """Exception for operands living in different rings."""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="RING_MISMATCH", **kwargs)


class NotUnitError(SkewCodeError):
    """Exception for inverting or dividing by a non-unit."""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="NOT_UNIT", **kwargs)


class DivisionError(SkewCodeError):
    """Exception for an impossible or inconsistent division."""

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="DIVISION_ERROR", **kwargs)


class MessageBoundError(SkewCodeError):
    """Exception for messages outside the message space of a code."""

    exit_code = 3

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="MESSAGE_BOUND", **kwargs)


class GuardExceededError(SkewCodeError):
    """Exception for enumerations larger than the configured guard."""

    exit_code = 4

    def __init__(self, message: str, limit: int = None, requested: int = None, **kwargs):
        self.limit = limit
        self.requested = requested
        super().__init__(message, error_code="GUARD_EXCEEDED", **kwargs)
        self.details.setdefault("limit", limit)
        self.details.setdefault("requested", requested)


class UncorrectableError(SkewCodeError):
    """Exception for received words the decoder cannot correct."""

    exit_code = 5

    def __init__(self, message: str, syndrome: Any = None, **kwargs):
        self.syndrome = syndrome
        super().__init__(message, error_code="UNCORRECTABLE", **kwargs)


class SyndromeCollisionError(SkewCodeError):
    """Exception for distinct error patterns sharing a syndrome."""

    exit_code = 5

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="SYNDROME_COLLISION", **kwargs)


class ClassificationError(SkewCodeError):
    """Exception for a generator form that fails to regenerate its code."""

    exit_code = 1

    def __init__(self, message: str, **kwargs):
        super().__init__(message, error_code="CLASSIFICATION_ERROR", **kwargs)


class FixtureMismatchError(SkewCodeError):
    """Exception for a golden fixture that no longer matches."""

    exit_code = 1

    def __init__(self, message: str, diff: Any = None, **kwargs):
        self.diff = diff
        super().__init__(message, error_code="FIXTURE_MISMATCH", **kwargs)


class ConfigurationError(SkewCodeError):
    """Exception for configuration related errors."""

    def __init__(self, message: str, config_key: str = None, **kwargs):
        self.config_key = config_key
        super().__init__(message, error_code="CONFIG_ERROR", **kwargs)
