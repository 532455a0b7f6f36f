"""
Exact arithmetic in the chain ring R_k = F_p[u]/<u^k> and its automorphisms.

An element of R_k is stored as k integers in [0, p), ascending powers of u.
The automorphism theta fixes F_p and sends u to s*u, so theta^j multiplies
the coefficient of u^l by s^(j*l).
"""
import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, List, Sequence, Tuple, Union

import galois
import numpy as np

from src.utils.errors import NotUnitError, RingMismatchError, ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RingContext:
    """The triple (p, k, s) defining F_p, R_k and theta."""

    p: int
    k: int
    s: int
    m: int = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not galois.is_prime(self.p):
            raise ValidationError(f"p must be prime, got {self.p}", field="p")
        if not isinstance(self.k, int) or self.k < 1:
            raise ValidationError(f"k must be >= 1, got {self.k}", field="k")
        if not isinstance(self.s, int) or self.s % self.p == 0:
            raise ValidationError(f"s must be a nonzero residue mod {self.p}, got {self.s}", field="s")
        object.__setattr__(self, "s", self.s % self.p)
        object.__setattr__(self, "m", _multiplicative_order(self.s, self.p))
        if self.p == 2:
            logger.warning("characteristic_two", p=self.p, note="theta is the identity; codes are classical")

    @property
    def is_identity(self) -> bool:
        """Whether theta acts trivially on R_k."""
        return self.k == 1 or self.m == 1

    @property
    def base_field(self):
        """The galois field class GF(p)."""
        return galois.GF(self.p)

    @property
    def size(self) -> int:
        return self.p ** self.k

    def at_level(self, level: int) -> "RingContext":
        """Context of R_level with the same p and s."""
        if level < 1 or level > self.k:
            raise ValidationError(f"level must lie in [1, {self.k}], got {level}", field="level")
        if level == self.k:
            return self
        return RingContext(self.p, level, self.s)

    def theta_factor(self, j: int, layer: int) -> int:
        """s^(j*layer) mod p; negative j gives theta^(-j)."""
        return pow(self.s, (j * layer) % self.m, self.p)

    def element(self, coeffs: Union[int, Sequence[int]]) -> "ChainRingElement":
        """Build an element from an integer or ascending u-coefficients."""
        if isinstance(coeffs, (int, np.integer)):
            coeffs = [coeffs]
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            if any(c % self.p for c in coeffs[self.k:]):
                raise ValidationError(f"element has {len(coeffs)} layers, ring has {self.k}", field="coeffs")
            coeffs = coeffs[: self.k]
        coeffs = coeffs + [0] * (self.k - len(coeffs))
        return ChainRingElement(self, tuple(int(c) % self.p for c in coeffs))

    def zero(self) -> "ChainRingElement":
        return self.element(0)

    def one(self) -> "ChainRingElement":
        return self.element(1)

    def u_power(self, j: int) -> "ChainRingElement":
        """u^j (zero once j >= k)."""
        coeffs = [0] * self.k
        if j < self.k:
            coeffs[j] = 1
        return ChainRingElement(self, tuple(coeffs))

    def elements(self) -> Iterator["ChainRingElement"]:
        """Every element of R_k, constant layer varying fastest."""
        for digits in itertools.product(range(self.p), repeat=self.k):
            yield ChainRingElement(self, tuple(reversed(digits)))

    def units(self) -> List["ChainRingElement"]:
        """Every unit of R_k."""
        return [a for a in self.elements() if a.is_unit()]

    @cached_property
    def element_table(self) -> Tuple["ChainRingElement", ...]:
        """Elements indexed by their base-p integer code (constant digit lowest)."""
        return tuple(self.elements())

    def __str__(self) -> str:
        return f"R_{self.k}(p={self.p}, s={self.s})"


@lru_cache(maxsize=None)
def _multiplicative_order(s: int, p: int) -> int:
    order, power = 1, s % p
    while power != 1:
        power = (power * s) % p
        order += 1
    return order


@dataclass(frozen=True)
class ChainRingElement:
    """An element a_0 + a_1 u + ... + a_(k-1) u^(k-1) of R_k."""

    ctx: RingContext
    coeffs: Tuple[int, ...]

    def _check(self, other: "ChainRingElement") -> None:
        if not isinstance(other, ChainRingElement):
            raise TypeError(f"expected ChainRingElement, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise RingMismatchError(f"cannot combine elements of {self.ctx} and {other.ctx}")

    def _coerce(self, other) -> "ChainRingElement":
        if isinstance(other, (int, np.integer)):
            return self.ctx.element(other)
        self._check(other)
        return other

    def __add__(self, other) -> "ChainRingElement":
        if not isinstance(other, (int, np.integer, ChainRingElement)):
            return NotImplemented
        other = self._coerce(other)
        p = self.ctx.p
        return ChainRingElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "ChainRingElement":
        p = self.ctx.p
        return ChainRingElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other) -> "ChainRingElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ChainRingElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ChainRingElement":
        if not isinstance(other, (int, np.integer, ChainRingElement)):
            return NotImplemented
        other = self._coerce(other)
        p, k = self.ctx.p, self.ctx.k
        out = [0] * k
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(k - i):
                    out[i + j] += a * other.coeffs[j]
        return ChainRingElement(self.ctx, tuple(c % p for c in out))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_unit(self) -> bool:
        """Units of R_k are exactly the elements with nonzero constant layer."""
        return self.coeffs[0] != 0

    def valuation(self) -> int:
        """Largest v with u^v dividing the element (k for zero)."""
        for layer, c in enumerate(self.coeffs):
            if c:
                return layer
        return self.ctx.k

    def inverse(self) -> "ChainRingElement":
        """
        Inverse of a unit by layer lifting.

        Starting from the inverse of the constant layer, each step
        v <- v + v*e with e = 1 - a*v squares the error term, so at most k
        steps reach an exact inverse.
        """
        if not self.is_unit():
            raise NotUnitError(f"{self} is not a unit of {self.ctx}")
        one = self.ctx.one()
        v = self.ctx.element(pow(self.coeffs[0], -1, self.ctx.p))
        for _ in range(self.ctx.k):
            e = one - self * v
            if e.is_zero():
                break
            v = v + v * e
        return v

    def theta(self, j: int = 1) -> "ChainRingElement":
        """theta^j of the element; j may be negative."""
        if self.ctx.is_identity or j % self.ctx.m == 0:
            return self
        ctx = self.ctx
        return ChainRingElement(
            ctx, tuple((c * ctx.theta_factor(j, layer)) % ctx.p for layer, c in enumerate(self.coeffs))
        )

    def truncate(self, level: int) -> "ChainRingElement":
        """Image in R_level (drop layers >= level)."""
        target = self.ctx.at_level(level)
        return ChainRingElement(target, self.coeffs[:level])

    def lift(self, ctx: RingContext) -> "ChainRingElement":
        """Same coefficients viewed in a larger ring (zero top layers)."""
        if ctx.p != self.ctx.p or ctx.s != self.ctx.s or ctx.k < self.ctx.k:
            raise RingMismatchError(f"cannot lift {self.ctx} into {ctx}")
        return ChainRingElement(ctx, self.coeffs + (0,) * (ctx.k - self.ctx.k))

    def to_level(self, ctx: RingContext) -> "ChainRingElement":
        """Truncate or lift into ``ctx``."""
        if ctx.k <= self.ctx.k:
            if ctx.p != self.ctx.p or ctx.s != self.ctx.s:
                raise RingMismatchError(f"cannot move {self.ctx} to {ctx}")
            return ChainRingElement(ctx, self.coeffs[: ctx.k])
        return self.lift(ctx)

    def shift_up(self, i: int, ctx: RingContext = None) -> "ChainRingElement":
        """u^i times the element, landing in ``ctx`` (default: own ring)."""
        ctx = ctx or self.ctx
        coeffs = [0] * ctx.k
        for layer, c in enumerate(self.coeffs):
            if layer + i < ctx.k:
                coeffs[layer + i] = c
        return ChainRingElement(ctx, tuple(coeffs))

    def shift_down(self, i: int) -> "ChainRingElement":
        """The element b of R_(k-i) with u^i * b equal to this element."""
        if self.valuation() < i:
            raise ValidationError(f"{self} is not divisible by u^{i}")
        return ChainRingElement(self.ctx.at_level(self.ctx.k - i), self.coeffs[i:])

    def to_int(self) -> int:
        """Base-p integer code with the constant layer as lowest digit."""
        value = 0
        for c in reversed(self.coeffs):
            value = value * self.ctx.p + c
        return value

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def term_count(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __str__(self) -> str:
        terms = []
        for layer, c in enumerate(self.coeffs):
            if not c:
                continue
            if layer == 0:
                terms.append(str(c))
            else:
                power = "u" if layer == 1 else f"u^{layer}"
                terms.append(power if c == 1 else f"{c}{power}")
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"ChainRingElement({self}, p={self.ctx.p}, k={self.ctx.k})"


def ctx_new(p: int, k: int, s: int) -> RingContext:
    """Validated ring context with its automorphism order."""
    return RingContext(p, k, s)


def cre_add(ctx: RingContext, a: ChainRingElement, b: ChainRingElement) -> ChainRingElement:
    _require_ctx(ctx, a, b)
    return a + b


def cre_mul(ctx: RingContext, a: ChainRingElement, b: ChainRingElement) -> ChainRingElement:
    _require_ctx(ctx, a, b)
    return a * b


def cre_is_unit(ctx: RingContext, a: ChainRingElement) -> bool:
    _require_ctx(ctx, a)
    return a.is_unit()


def cre_inverse(ctx: RingContext, a: ChainRingElement) -> ChainRingElement:
    _require_ctx(ctx, a)
    return a.inverse()


def theta_apply(ctx: RingContext, a: ChainRingElement, j: int) -> ChainRingElement:
    _require_ctx(ctx, a)
    return a.theta(j)


def theta_inverse_apply(ctx: RingContext, a: ChainRingElement, j: int) -> ChainRingElement:
    _require_ctx(ctx, a)
    return a.theta(-j)


def _require_ctx(ctx: RingContext, *elements: ChainRingElement) -> None:
    for element in elements:
        if element.ctx != ctx:
            raise RingMismatchError(f"element of {element.ctx} used with {ctx}")
