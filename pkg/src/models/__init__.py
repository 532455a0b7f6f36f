"""
Ring, polynomial and codeword value types, plus the document schemas.
"""

from .ring import ChainRingElement, RingContext, ctx_new
from .skew_poly import LayerDecomposition, SkewPoly
from .codeword import Codeword
from .schemas import CodeDocument, MessageDocument, parse_element, parse_poly

__all__ = [
    "ChainRingElement",
    "RingContext",
    "ctx_new",
    "LayerDecomposition",
    "SkewPoly",
    "Codeword",
    "CodeDocument",
    "MessageDocument",
    "parse_element",
    "parse_poly",
]
