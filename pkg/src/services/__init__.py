"""
Services module initialization.
"""

from .monitoring import PerformanceMonitor, write_metrics

__all__ = ["PerformanceMonitor", "write_metrics"]
