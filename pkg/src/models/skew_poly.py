"""
The skew polynomial ring R_k[x; theta].

Multiplication follows a x^i * b x^j = a theta^i(b) x^(i+j), so x*a = theta(a)*x.
Polynomials are immutable; coefficient tuples are trimmed so structural
equality is ring equality.
"""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import galois
import numpy as np

from src.models.ring import ChainRingElement, RingContext
from src.utils.errors import DivisionError, NotUnitError, RingMismatchError, ValidationError

# Degree of the zero polynomial; compares below every integer.
DEG_ZERO = float("-inf")

Coefficient = Union[int, Sequence[int], ChainRingElement]


@dataclass(frozen=True)
class SkewPoly:
    """An element of R_k[x; theta], coeffs[i] is the coefficient of x^i."""

    ctx: RingContext
    coeffs: Tuple[ChainRingElement, ...] = ()

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1].is_zero():
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    # Constructors

    @classmethod
    def from_coeffs(cls, ctx: RingContext, coeffs: Iterable[Coefficient]) -> "SkewPoly":
        """Build from ascending coefficients given as ints, u-coefficient lists or elements."""
        elements = []
        for c in coeffs:
            if isinstance(c, ChainRingElement):
                if c.ctx != ctx:
                    raise RingMismatchError(f"coefficient of {c.ctx} in polynomial over {ctx}")
                elements.append(c)
            else:
                elements.append(ctx.element(c))
        return cls(ctx, tuple(elements))

    @classmethod
    def from_rows(cls, ctx: RingContext, rows: Sequence[Sequence[int]]) -> "SkewPoly":
        p = ctx.p
        return cls(ctx, tuple(ChainRingElement(ctx, tuple(int(c) % p for c in row)) for row in rows))

    @classmethod
    def from_base(cls, ctx: RingContext, coeffs: Sequence[int]) -> "SkewPoly":
        """Lift an ascending F_p coefficient list into R_k[x; theta]."""
        return cls.from_coeffs(ctx, [int(c) for c in coeffs])

    @classmethod
    def zero(cls, ctx: RingContext) -> "SkewPoly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: RingContext) -> "SkewPoly":
        return cls(ctx, (ctx.one(),))

    @classmethod
    def constant(cls, a: ChainRingElement) -> "SkewPoly":
        return cls(a.ctx, (a,))

    @classmethod
    def monomial(cls, a: ChainRingElement, degree: int) -> "SkewPoly":
        """a x^degree."""
        ctx = a.ctx
        return cls(ctx, (ctx.zero(),) * degree + (a,))

    @classmethod
    def x(cls, ctx: RingContext, degree: int = 1) -> "SkewPoly":
        return cls.monomial(ctx.one(), degree)

    @classmethod
    def x_power_minus_one(cls, ctx: RingContext, n: int) -> "SkewPoly":
        """x^n - 1."""
        if n < 1:
            raise ValidationError(f"n must be >= 1, got {n}", field="n")
        return cls.x(ctx, n) - cls.one(ctx)

    # Basic properties

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    @property
    def lead(self) -> ChainRingElement:
        if not self.coeffs:
            return self.ctx.zero()
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit_leading(self) -> bool:
        return bool(self.coeffs) and self.lead.is_unit()

    def leading_valuation(self) -> int:
        """Valuation of the leading coefficient (k for zero)."""
        return self.lead.valuation()

    def valuation(self) -> int:
        """Largest v with every coefficient divisible by u^v."""
        return min((c.valuation() for c in self.coeffs), default=self.ctx.k)

    # Arithmetic

    def _check(self, other: "SkewPoly") -> None:
        if other.ctx != self.ctx:
            raise RingMismatchError(f"cannot combine polynomials over {self.ctx} and {other.ctx}")

    def _coerce(self, other) -> "SkewPoly":
        if isinstance(other, SkewPoly):
            self._check(other)
            return other
        if isinstance(other, ChainRingElement):
            if other.ctx != self.ctx:
                raise RingMismatchError(f"cannot combine {other.ctx} with polynomials over {self.ctx}")
            return SkewPoly.constant(other)
        if isinstance(other, (int, np.integer)):
            return SkewPoly.constant(self.ctx.element(int(other)))
        return NotImplemented

    def __add__(self, other) -> "SkewPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        zero = self.ctx.zero()
        size = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(
            self.ctx,
            tuple(
                (self.coeffs[i] if i < len(self.coeffs) else zero) + (other.coeffs[i] if i < len(other.coeffs) else zero)
                for i in range(size)
            ),
        )

    __radd__ = __add__

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.ctx, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "SkewPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SkewPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "SkewPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return SkewPoly.zero(self.ctx)
        ctx = self.ctx
        p, k = ctx.p, ctx.k
        out = [[0] * k for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            twist = [ctx.theta_factor(i, layer) for layer in range(k)]
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                acc = out[i + j]
                for la, ca in enumerate(a.coeffs):
                    if not ca:
                        continue
                    for lb in range(k - la):
                        acc[la + lb] += ca * b.coeffs[lb] * twist[lb]
        return SkewPoly.from_rows(ctx, out)

    def __rmul__(self, other) -> "SkewPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def scale_left(self, a: ChainRingElement) -> "SkewPoly":
        """a * f, multiplying every coefficient on the left."""
        return SkewPoly(self.ctx, tuple(a * c for c in self.coeffs))

    def theta(self, j: int = 1) -> "SkewPoly":
        """Apply theta^j to every coefficient."""
        return SkewPoly(self.ctx, tuple(c.theta(j) for c in self.coeffs))

    def monic(self) -> "SkewPoly":
        """lead^(-1) * f for a unit-leading f."""
        if not self.is_unit_leading():
            raise NotUnitError(f"leading coefficient of {self} is not a unit")
        return self.scale_left(self.lead.inverse())

    # Division

    def _divisor_lead_inverse(self, g: "SkewPoly") -> ChainRingElement:
        self._check(g)
        if g.is_zero():
            raise DivisionError("division by the zero polynomial")
        if not g.lead.is_unit():
            raise NotUnitError(f"divisor {g} does not have a unit leading coefficient")
        return g.lead.inverse()

    def right_divmod(self, g: "SkewPoly") -> Tuple["SkewPoly", "SkewPoly"]:
        """(q, r) with self = q*g + r and deg r < deg g."""
        d_inv = self._divisor_lead_inverse(g)
        m = g.degree
        quotient = [self.ctx.zero()] * max(len(self.coeffs) - m, 0)
        rem = self
        while not rem.is_zero() and rem.degree >= m:
            e = rem.degree
            a = rem.lead * d_inv.theta(e - m)
            quotient[e - m] = a
            rem = rem - SkewPoly.monomial(a, e - m) * g
        return SkewPoly(self.ctx, tuple(quotient)), rem

    def left_divmod(self, g: "SkewPoly") -> Tuple["SkewPoly", "SkewPoly"]:
        """(q, r) with self = g*q + r and deg r < deg g."""
        d_inv = self._divisor_lead_inverse(g)
        m = g.degree
        quotient = [self.ctx.zero()] * max(len(self.coeffs) - m, 0)
        rem = self
        while not rem.is_zero() and rem.degree >= m:
            e = rem.degree
            a = (d_inv * rem.lead).theta(-m)
            quotient[e - m] = a
            rem = rem - g * SkewPoly.monomial(a, e - m)
        return SkewPoly(self.ctx, tuple(quotient)), rem

    def mod_xn(self, n: int) -> "SkewPoly":
        """Remainder of right division by x^n - 1: x^e folds onto x^(e mod n)."""
        if n < 1:
            raise ValidationError(f"n must be >= 1, got {n}", field="n")
        if len(self.coeffs) <= n:
            return self
        ctx = self.ctx
        rows = [[0] * ctx.k for _ in range(n)]
        for e, c in enumerate(self.coeffs):
            acc = rows[e % n]
            for layer, value in enumerate(c.coeffs):
                acc[layer] += value
        return SkewPoly.from_rows(ctx, rows)

    # u-structure

    def u_commute(self, i: int) -> "SkewPoly":
        """f_i with f * u^i = u^i * f_i; layers >= k - i of f_i are zero."""
        ctx = self.ctx
        if i < 1 or i > ctx.k - 1:
            raise ValidationError(f"i must lie in [1, {ctx.k - 1}], got {i}", field="i")
        rows = []
        for j, c in enumerate(self.coeffs):
            factor = ctx.theta_factor(j, i)
            rows.append([(value * factor) if layer < ctx.k - i else 0 for layer, value in enumerate(c.coeffs)])
        return SkewPoly.from_rows(ctx, rows)

    def truncate(self, level: int) -> "SkewPoly":
        """Image in R_level[x; theta]."""
        target = self.ctx.at_level(level)
        return SkewPoly(target, tuple(c.truncate(level) for c in self.coeffs))

    def to_level(self, ctx: RingContext) -> "SkewPoly":
        """Truncate or lift the coefficients into ``ctx``."""
        return SkewPoly(ctx, tuple(c.to_level(ctx) for c in self.coeffs))

    def shift_up(self, i: int, ctx: RingContext = None) -> "SkewPoly":
        """u^i * f with the result in ``ctx`` (default: own ring)."""
        ctx = ctx or self.ctx
        return SkewPoly(ctx, tuple(c.shift_up(i, ctx) for c in self.coeffs))

    def shift_down(self, i: int) -> "SkewPoly":
        """The polynomial b over R_(k-i) with u^i * b equal to f."""
        if self.valuation() < i:
            raise ValidationError(f"{self} is not divisible by u^{i}")
        target = self.ctx.at_level(self.ctx.k - i)
        if self.is_zero():
            return SkewPoly.zero(target)
        return SkewPoly(target, tuple(c.shift_down(i) for c in self.coeffs))

    def layer(self, index: int) -> Tuple[int, ...]:
        """Ascending F_p coefficients of u-layer ``index``."""
        return tuple(c.coeffs[index] for c in self.coeffs)

    def layers(self) -> "LayerDecomposition":
        GF = self.ctx.base_field
        return LayerDecomposition(
            self.ctx,
            tuple(base_poly(GF, self.layer(index)) for index in range(self.ctx.k)),
        )

    # Units

    def is_unit(self) -> bool:
        """Units are a + u*h_1(x) + ... with a a nonzero element of F_p."""
        if self.is_zero() or self.coeffs[0].coeffs[0] == 0:
            return False
        return all(c.coeffs[0] == 0 for c in self.coeffs[1:])

    def inverse(self) -> "SkewPoly":
        """
        Two-sided inverse of a unit by layer lifting.

        v starts as the inverse of the constant; v <- v + v*e with
        e = 1 - f*v moves e from u^j R to u^(2j) R, so k steps suffice.
        """
        if not self.is_unit():
            raise NotUnitError(f"{self} is not a unit of R_{self.ctx.k}[x;theta]")
        one = SkewPoly.one(self.ctx)
        v = SkewPoly.constant(self.ctx.element(pow(self.coeffs[0].coeffs[0], -1, self.ctx.p)))
        for _ in range(self.ctx.k):
            e = one - self * v
            if e.is_zero():
                break
            v = v + v * e
        return v

    # Conversion

    def to_rows(self) -> List[List[int]]:
        """Canonical serialization: ascending x-degree, each entry ascending u-powers."""
        return [c.to_list() for c in self.coeffs]

    def to_vector(self, n: int) -> Tuple[ChainRingElement, ...]:
        """Exactly n coefficients c_0, ..., c_(n-1)."""
        if len(self.coeffs) > n:
            raise ValidationError(f"degree {self.degree} does not fit length {n}")
        return self.coeffs + (self.ctx.zero(),) * (n - len(self.coeffs))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"SkewPoly({self}, p={self.ctx.p}, k={self.ctx.k}, s={self.ctx.s})"


@dataclass(frozen=True)
class LayerDecomposition:
    """f = sum over i of u^i * t_i(x) with every t_i over F_p."""

    ctx: RingContext
    layers: Tuple[galois.Poly, ...]

    def reassemble(self) -> SkewPoly:
        size = max((len(poly_coeffs(t)) for t in self.layers), default=0)
        rows = [[0] * self.ctx.k for _ in range(size)]
        for index, t in enumerate(self.layers):
            for e, c in enumerate(poly_coeffs(t)):
                rows[e][index] = int(c)
        return SkewPoly.from_rows(self.ctx, rows)


def base_poly(GF, coeffs: Sequence[int]) -> galois.Poly:
    """F_p polynomial from ascending coefficients."""
    coeffs = [int(c) for c in coeffs] or [0]
    return galois.Poly(coeffs, field=GF, order="asc")


def poly_coeffs(poly: galois.Poly) -> List[int]:
    """Ascending integer coefficients, trailing zeros removed."""
    values = [int(c) for c in poly.coeffs[::-1]]
    while values and values[-1] == 0:
        values.pop()
    return values


def format_poly(f: SkewPoly) -> str:
    """Descending text form, e.g. ``(1+u+2u^2)x^5 + (2u+u^2)x^4 + 1``."""
    if f.is_zero():
        return "0"
    bare_constant = f.degree == 0
    terms = []
    for e in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[e]
        if c.is_zero():
            continue
        text = str(c)
        if c.term_count() > 1 and not bare_constant:
            text = f"({text})"
        if e == 0:
            terms.append(text)
            continue
        power = "x" if e == 1 else f"x^{e}"
        terms.append(power if text == "1" else f"{text}{power}")
    return " + ".join(terms)


# Operation-level API


def sp_add(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return f + g


def sp_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    return f * g


def sp_right_divide(f: SkewPoly, g: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    return f.right_divmod(g)


def sp_left_divide(f: SkewPoly, g: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    return f.left_divmod(g)


def u_commute(f: SkewPoly, i: int) -> SkewPoly:
    return f.u_commute(i)


def sp_is_unit(f: SkewPoly) -> bool:
    return f.is_unit()


def sp_inverse_unit(f: SkewPoly) -> SkewPoly:
    return f.inverse()


def is_right_divisor(g: SkewPoly, f: SkewPoly) -> bool:
    """Whether g right-divides f, i.e. f = q*g."""
    return f.right_divmod(g)[1].is_zero()


def mod_xn_minus_1(f: SkewPoly, n: int) -> SkewPoly:
    return f.mod_xn(n)


def layers(f: SkewPoly) -> LayerDecomposition:
    return f.layers()
