"""
F_p-linear spans of codeword sets.

A skew cyclic code is a finite F_p vector space, so everything about its
size, membership and leading-term structure follows from one reduced
row-echelon basis computed with galois.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.config import get_settings
from src.models.codeword import (
    Codeword,
    codewords_from_vectors,
    column_position,
    poly_to_vector,
    vector_to_poly,
)
from src.models.ring import RingContext
from src.models.skew_poly import SkewPoly
from src.services.monitoring import CODEWORDS_ENUMERATED
from src.utils.helpers import check_guard, digit_rows
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class SpanBasis:
    """Reduced row-echelon basis of an F_p subspace of R_k^n."""

    ctx: RingContext
    n: int
    rows: np.ndarray
    pivot_columns: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.pivot_columns)

    @property
    def size(self) -> int:
        return self.ctx.p ** self.dim

    @cached_property
    def pivots(self) -> Tuple[Tuple[int, int], ...]:
        """(degree, layer) of each pivot, in row order."""
        return tuple(column_position(self.n, self.ctx.k, c) for c in self.pivot_columns)

    @cached_property
    def key(self) -> Tuple:
        """Canonical identity of the subspace."""
        return (self.ctx.p, self.ctx.k, self.ctx.s, self.n, self.rows.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, SpanBasis) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def row_for(self, degree: int, layer: int) -> Optional[SkewPoly]:
        """Basis polynomial whose pivot sits at (degree, layer)."""
        for index, pivot in enumerate(self.pivots):
            if pivot == (degree, layer):
                return vector_to_poly(self.ctx, self.rows[index], self.n)
        return None

    def divisible_part(self, layer: int) -> "SpanBasis":
        """Basis of the vectors whose coordinates below ``layer`` all vanish."""
        if layer <= 0 or not self.dim:
            return self
        k = self.ctx.k
        low = [c for c in range(self.n * k) if c % k < layer]
        high = [c for c in range(self.n * k) if c % k >= layer]
        order = np.array(low + high)
        reduced = np.asarray(self.ctx.base_field(self.rows[:, order]).row_reduce(), dtype=np.int64)
        kept = reduced[reduced.any(axis=1) & ~reduced[:, : len(low)].any(axis=1)]
        vectors = np.zeros((len(kept), self.n * k), dtype=np.int64)
        vectors[:, order] = kept
        return row_reduce(self.ctx, self.n, list(vectors))

    def polys(self) -> List[SkewPoly]:
        return [vector_to_poly(self.ctx, row, self.n) for row in self.rows]

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        """Residue of a layout vector after clearing every pivot column."""
        p = self.ctx.p
        residue = np.asarray(vector, dtype=np.int64) % p
        for row, column in zip(self.rows, self.pivot_columns):
            if residue[column]:
                residue = (residue - residue[column] * row) % p
        return residue

    def contains(self, f: SkewPoly) -> bool:
        if f.ctx != self.ctx:
            return False
        return not self.reduce(poly_to_vector(f.mod_xn(self.n), self.n)).any()

    def iter_vectors(self, guard: Optional[int] = None, block: Optional[int] = None) -> Iterator[np.ndarray]:
        """
        Every vector of the subspace, in blocks of layout rows.

        Raises:
            GuardExceededError: If the subspace has more than ``guard`` vectors
        """
        settings = get_settings()
        guard = guard if guard is not None else settings.enumeration_guard
        block = block or settings.enumeration_block
        check_guard(self.size, guard, "codeword enumeration")
        p = self.ctx.p
        if self.dim == 0:
            CODEWORDS_ENUMERATED.inc()
            yield np.zeros((1, self.n * self.ctx.k), dtype=np.int64)
            return
        for start in range(0, self.size, block):
            stop = min(start + block, self.size)
            coefficients = digit_rows(start, stop, p, self.dim)
            CODEWORDS_ENUMERATED.inc(stop - start)
            yield (coefficients @ self.rows) % p

    def codewords(self, guard: Optional[int] = None) -> Iterator[Codeword]:
        for vectors in self.iter_vectors(guard):
            yield from codewords_from_vectors(self.ctx, vectors, self.n)


def row_reduce(ctx: RingContext, n: int, vectors: Sequence[np.ndarray]) -> SpanBasis:
    """Reduced row-echelon basis of the span of layout vectors."""
    width = n * ctx.k
    if not len(vectors):
        return SpanBasis(ctx, n, np.zeros((0, width), dtype=np.int64), ())
    GF = ctx.base_field
    matrix = np.asarray(np.stack([np.asarray(v, dtype=np.int64) % ctx.p for v in vectors]), dtype=np.int64)
    reduced = np.asarray(GF(matrix).row_reduce(), dtype=np.int64)
    nonzero = reduced[reduced.any(axis=1)]
    pivots = tuple(int(np.flatnonzero(row)[0]) for row in nonzero)
    return SpanBasis(ctx, n, nonzero, pivots)


def u_multiples(f: SkewPoly) -> Iterator[SkewPoly]:
    """u^l * f for l = 0, ..., k-1 (stops early at zero)."""
    for layer in range(f.ctx.k):
        shifted = f.shift_up(layer)
        if shifted.is_zero():
            return
        yield shifted


def linear_span(ctx: RingContext, n: int, polys: Sequence[SkewPoly]) -> SpanBasis:
    """R_k-linear span (no x-shifts) of polynomials of degree < n."""
    vectors = [poly_to_vector(g, n) for f in polys for g in u_multiples(f.mod_xn(n))]
    return row_reduce(ctx, n, vectors)


def module_span(ctx: RingContext, n: int, generators: Sequence[SkewPoly]) -> SpanBasis:
    """
    Left R_k[x; theta]-submodule of R_k[x; theta]/<x^n - 1> spanned by generators.

    x^n acts as theta^n on residues, so shifts up to n*m - 1 are needed
    before the x-orbit of a residue closes.
    """
    x = SkewPoly.x(ctx)
    vectors = []
    for generator in generators:
        current = generator.mod_xn(n)
        for _ in range(n * ctx.m):
            vectors.extend(poly_to_vector(g, n) for g in u_multiples(current))
            current = (x * current).mod_xn(n)
    basis = row_reduce(ctx, n, vectors)
    logger.debug("module_span_computed", n=n, generators=len(generators), dim=basis.dim)
    return basis
