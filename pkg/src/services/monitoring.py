"""
Metrics and performance monitoring for the skew cyclic code toolkit.
"""
import time
from pathlib import Path
from typing import Union

from prometheus_client import REGISTRY, Counter, Histogram, write_to_textfile

from src.utils.logger import get_logger

logger = get_logger(__name__)

# Prometheus metrics
CODEWORDS_ENUMERATED = Counter("skewcode_codewords_enumerated_total", "Codewords produced by enumeration")
FACTOR_CANDIDATES = Counter("skewcode_factor_candidates_total", "Factor candidates tried", ["strategy"])
DECODE_OUTCOMES = Counter("skewcode_decode_outcomes_total", "Decoder outcomes", ["status"])
OPERATION_DURATION = Histogram("skewcode_operation_duration_seconds", "Operation duration in seconds", ["operation"])
ERROR_COUNT = Counter("skewcode_errors_total", "Total errors", ["type"])


def track_error(error_type: str, error_message: str, **context) -> None:
    """Track error occurrence."""
    ERROR_COUNT.labels(type=error_type).inc()
    logger.debug("error_tracked", error_type=error_type, error_message=error_message, **context)


def track_decode(status: str) -> None:
    """Track a decoder outcome."""
    DECODE_OUTCOMES.labels(status=status).inc()


def write_metrics(path: Union[str, Path]) -> None:
    """Write the Prometheus exposition text of every metric to a file."""
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    write_to_textfile(str(path), REGISTRY)
    logger.info("metrics_written", path=str(path))


class PerformanceMonitor:
    """Context manager for monitoring operation performance."""

    def __init__(self, operation_name: str, threshold_s: float = 5.0, **context):
        self.operation_name = operation_name
        self.threshold_s = threshold_s
        self.context = context
        self.start_time = None
        self.duration = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        logger.debug("operation_started", operation=self.operation_name, **self.context)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.duration = time.perf_counter() - self.start_time
        OPERATION_DURATION.labels(operation=self.operation_name).observe(self.duration)

        if exc_type is None:
            emit = logger.warning if self.duration > self.threshold_s else logger.info
            emit("operation_completed", operation=self.operation_name, duration=round(self.duration, 4), **self.context)
        else:
            track_error(exc_type.__name__, str(exc_val), operation=self.operation_name)
            logger.info(
                "operation_failed",
                operation=self.operation_name,
                duration=round(self.duration, 4),
                error=str(exc_val),
                **self.context,
            )
        return False
