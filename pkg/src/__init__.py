"""
skewcode

Skew polynomial rings over F_p[u]/<u^k> and the skew cyclic codes they
define: construction, classification, factorization of x^n - 1,
encoding and syndrome decoding.
"""

__version__ = "1.0.0"

from src.config import Settings, get_settings

__all__ = [
    "Settings",
    "get_settings",
]
