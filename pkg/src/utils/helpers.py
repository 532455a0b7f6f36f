"""
Helper functions and utilities for the skew cyclic code toolkit.
"""
import math
from typing import Any, List

import numpy as np

from .errors import GuardExceededError


def chunk_list(items: List[Any], chunk_size: int) -> List[List[Any]]:
    """
    Split a list into chunks of specified size.

    Args:
        items: List to chunk
        chunk_size: Maximum size of each chunk

    Returns:
        List of chunks
    """
    return [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]


def split_evenly(items: List[Any], parts: int) -> List[List[Any]]:
    """Split a list into at most ``parts`` chunks of near equal size."""
    if not items:
        return []
    parts = max(1, min(parts, len(items)))
    return chunk_list(items, math.ceil(len(items) / parts))


def check_guard(requested: int, limit: int, what: str) -> None:
    """
    Raise when an enumeration would exceed its guard.

    Args:
        requested: Number of items the enumeration would produce
        limit: Configured guard
        what: Human readable name of the enumerated items

    Raises:
        GuardExceededError: If requested exceeds limit
    """
    if requested > limit:
        raise GuardExceededError(
            f"{what}: {requested} exceeds guard {limit}",
            limit=limit,
            requested=requested,
        )


def digit_rows(start: int, stop: int, base: int, width: int) -> np.ndarray:
    """
    Base-``base`` digits of the integers in [start, stop).

    Row i holds the ``width`` digits of start + i, least significant first.
    """
    numbers = np.arange(start, stop, dtype=np.int64)
    powers = base ** np.arange(width, dtype=np.int64)
    return (numbers[:, None] // powers[None, :]) % base

