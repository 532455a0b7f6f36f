"""
Logging utilities for the skew cyclic code toolkit.
"""
import functools
import logging
import sys
import time
from typing import Any, Callable, Optional

import structlog


def setup_logging(level: str = "WARNING", json_format: bool = False) -> None:
    """
    Setup structured logging for the application.

    Log records go to stderr so command output on stdout stays parseable.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        json_format: Whether to render events as JSON
    """
    log_level = getattr(logging, level.upper())

    renderer = structlog.processors.JSONRenderer() if json_format else structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=log_level, force=True)

    configure_library_loggers()


def configure_library_loggers():
    """Configure logging levels for external libraries."""
    logging.getLogger("galois").setLevel(logging.WARNING)
    logging.getLogger("numba").setLevel(logging.WARNING)
    logging.getLogger("hypothesis").setLevel(logging.WARNING)


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """
    Get a structured logger with the specified name.

    Configures logging from the settings on first use so library calls made
    outside the command line front end never print to stdout.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Bound structlog logger
    """
    if not structlog.is_configured():
        from src.config import get_settings

        settings = get_settings()
        setup_logging(settings.log_level, settings.log_json)
    return structlog.get_logger(name)


def log_performance(logger: Optional[Any] = None, threshold_ms: float = 1000):
    """
    Decorator to log function performance.

    Args:
        logger: Optional logger instance
        threshold_ms: Log warning if function takes longer than this (milliseconds)
    """

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            log = logger or get_logger(func.__module__)
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                duration_ms = (time.perf_counter() - start_time) * 1000
                log.debug("call_failed", function=func.__name__, duration_ms=round(duration_ms, 2), error=str(e))
                raise

            duration_ms = (time.perf_counter() - start_time) * 1000
            slow_call = duration_ms > threshold_ms
            emit = log.warning if slow_call else log.debug
            emit("call_timed", function=func.__name__, duration_ms=round(duration_ms, 2), slow_call=slow_call)
            return result

        return wrapper

    return decorator
