"""
Codewords of length n over R_k and their vector layouts.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from src.models.ring import ChainRingElement, RingContext
from src.models.skew_poly import SkewPoly
from src.utils.errors import RingMismatchError, ValidationError


@dataclass(frozen=True)
class Codeword:
    """(c_0, ..., c_(n-1)) with polynomial form sum of c_i x^i."""

    ctx: RingContext
    entries: Tuple[ChainRingElement, ...]

    @classmethod
    def from_poly(cls, f: SkewPoly, n: int) -> "Codeword":
        return cls(f.ctx, f.to_vector(n))

    @classmethod
    def zero(cls, ctx: RingContext, n: int) -> "Codeword":
        return cls(ctx, (ctx.zero(),) * n)

    @classmethod
    def from_rows(cls, ctx: RingContext, rows: Sequence[Sequence[int]]) -> "Codeword":
        return cls(ctx, tuple(ctx.element(list(row)) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def to_poly(self) -> SkewPoly:
        return SkewPoly(self.ctx, self.entries)

    def weight(self) -> int:
        """Hamming weight over R_k symbols."""
        return sum(1 for c in self.entries if not c.is_zero())

    def tau(self) -> "Codeword":
        """(theta(c_(n-1)), theta(c_0), ..., theta(c_(n-2)))."""
        shifted = (self.entries[-1],) + self.entries[:-1]
        return Codeword(self.ctx, tuple(c.theta(1) for c in shifted))

    def scale(self, a: ChainRingElement) -> "Codeword":
        """Left scalar multiple a * c."""
        return Codeword(self.ctx, tuple(a * c for c in self.entries))

    def _check(self, other: "Codeword") -> None:
        if other.ctx != self.ctx:
            raise RingMismatchError(f"codewords over {self.ctx} and {other.ctx}")
        if other.n != self.n:
            raise ValidationError(f"codeword lengths differ: {self.n} and {other.n}")

    def __add__(self, other: "Codeword") -> "Codeword":
        self._check(other)
        return Codeword(self.ctx, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Codeword") -> "Codeword":
        self._check(other)
        return Codeword(self.ctx, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def to_rows(self, descending: bool = False) -> List[List[int]]:
        rows = [c.to_list() for c in self.entries]
        return rows[::-1] if descending else rows

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.entries) + ")"


def column_index(n: int, k: int, degree: int, layer: int) -> int:
    """
    Column of (x^degree, u^layer) in the span layout.

    Columns run degree n-1 down to 0 and, within a degree, layer 0 up to
    k-1, so the first nonzero column of a vector is its leading degree at
    the valuation of its leading coefficient.
    """
    return (n - 1 - degree) * k + layer


def column_position(n: int, k: int, column: int) -> Tuple[int, int]:
    """(degree, layer) of a span layout column."""
    return n - 1 - column // k, column % k


def poly_to_vector(f: SkewPoly, n: int) -> np.ndarray:
    """Integer vector of f (degree < n) in the span layout."""
    k = f.ctx.k
    if len(f.coeffs) > n:
        raise ValidationError(f"degree {f.degree} does not fit length {n}")
    vector = np.zeros(n * k, dtype=np.int64)
    for degree, c in enumerate(f.coeffs):
        start = column_index(n, k, degree, 0)
        vector[start:start + k] = c.coeffs
    return vector


def vectors_to_symbols(vectors: np.ndarray, n: int, k: int) -> np.ndarray:
    """Reshape span layout rows to (count, n, k) with ascending degree."""
    return vectors.reshape(-1, n, k)[:, ::-1, :]


def vector_to_poly(ctx: RingContext, vector: Sequence[int], n: int) -> SkewPoly:
    symbols = vectors_to_symbols(np.asarray(vector, dtype=np.int64), n, ctx.k)[0]
    return SkewPoly.from_rows(ctx, symbols.tolist())


def codewords_from_vectors(ctx: RingContext, vectors: np.ndarray, n: int) -> Iterable[Codeword]:
    """Codewords of span layout rows, reusing the ring's element table."""
    table = ctx.element_table
    weights = ctx.p ** np.arange(ctx.k, dtype=np.int64)
    codes = vectors_to_symbols(vectors, n, ctx.k) @ weights
    for row in codes:
        yield Codeword(ctx, tuple(table[int(c)] for c in row))
