"""
Encoding and syndrome decoding of classified skew cyclic codes.

A received word is split into its u-layers; each layer is multiplied by an
F_p check polynomial modulo x^n - 1 and the tuple of products is looked up
in a table of correctable error patterns.
"""
import itertools
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

import galois
import numpy as np

from src.config import get_settings
from src.models.codeword import Codeword, column_index
from src.models.ring import RingContext
from src.models.skew_poly import SkewPoly, base_poly
from src.services.monitoring import PerformanceMonitor, track_decode
from src.services.skew_code import (
    CodeCase,
    GeneratorForm,
    GeneratorLink,
    cardinality,
    generator_chain,
)
from src.utils.errors import (
    MessageBoundError,
    RingMismatchError,
    SyndromeCollisionError,
    UncorrectableError,
    ValidationError,
)
from src.utils.helpers import check_guard, digit_rows
from src.utils.logger import get_logger

logger = get_logger(__name__)

SyndromeKey = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Message:
    """
    Message polynomials over R_k, one per generator: (t,) for Cases I and II,
    (t, j) for Case III, then one more per extra torsion generator.
    """

    case: CodeCase
    polys: Tuple[SkewPoly, ...]

    @property
    def ctx(self) -> RingContext:
        return self.polys[0].ctx


@dataclass(frozen=True)
class ErrorPattern:
    """Additive error as (position, layer, magnitude) terms."""

    terms: Tuple[Tuple[int, int, int], ...] = ()

    def __post_init__(self):
        terms = tuple(sorted((int(a), int(b), int(c)) for a, b, c in self.terms))
        slots = [(position, layer) for position, layer, _ in terms]
        if len(set(slots)) != len(slots):
            raise ValidationError("error terms must occupy distinct (position, layer) slots", field="terms")
        object.__setattr__(self, "terms", terms)

    @property
    def weight(self) -> int:
        return len(self.terms)

    def leader_key(self) -> Tuple:
        """Order used to pick one pattern among those sharing a syndrome."""
        return (
            self.weight,
            tuple(term[2] for term in self.terms),
            tuple(term[0] for term in self.terms),
            tuple(term[1] for term in self.terms),
        )

    def to_codeword(self, ctx: RingContext, n: int) -> Codeword:
        rows = [[0] * ctx.k for _ in range(n)]
        for position, layer, magnitude in self.terms:
            if not (0 <= position < n and 0 <= layer < ctx.k):
                raise ValidationError(f"error term ({position}, {layer}) outside length {n}, k={ctx.k}")
            rows[position][layer] = magnitude
        return Codeword.from_rows(ctx, rows)


@dataclass(frozen=True, eq=False)
class SyndromeTable:
    """Syndrome tuple to coset leader, for all patterns up to ``max_weight``."""

    ctx: RingContext
    n: int
    checks: Tuple[galois.Poly, ...]
    max_weight: int
    entries: Dict[SyndromeKey, ErrorPattern]
    ambiguous: FrozenSet[SyndromeKey] = frozenset()

    def lookup(self, key: SyndromeKey) -> Optional[ErrorPattern]:
        return self.entries.get(key)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class DecodeResult:
    corrected: Codeword
    message: Message
    error: ErrorPattern
    syndromes: Tuple[galois.Poly, ...]
    status: str
    ambiguous: bool = False


# Encoding


def _top_layers_zero(f: SkewPoly, level: int) -> bool:
    return all(not any(c.coeffs[level:]) for c in f.coeffs)


def _check_message_poly(f: SkewPoly, ctx: RingContext, max_degree: int, name: str, level: Optional[int] = None) -> None:
    if f.ctx != ctx:
        raise RingMismatchError(f"message {name} over {f.ctx} for a code over {ctx}")
    if not f.is_zero() and f.degree > max_degree:
        raise MessageBoundError(
            f"message {name} has degree {f.degree}, bound is {max_degree}",
            details={"poly": name, "degree": f.degree, "bound": max_degree},
        )
    if level is not None and not _top_layers_zero(f, level):
        raise MessageBoundError(
            f"message {name} must lie in R_{level}: layers >= {level} must be zero",
            details={"poly": name, "level": level},
        )


def _message_name(index: int, form: GeneratorForm) -> str:
    names = ("t", "j") if form.case == CodeCase.III else ("t",)
    return names[index] if index < len(names) else f"e{index - len(names) + 1}"


def _link_part(link: GeneratorLink, m: SkewPoly, ctx: RingContext) -> SkewPoly:
    """m * generator, with torsion products taken over R_(k - layer)."""
    if link.layer == 0:
        return m * link.base
    return (m.truncate(ctx.k - link.layer) * link.base).shift_up(link.layer, ctx)


def encode(form: GeneratorForm, msg: Message) -> Codeword:
    """
    Codeword of a message.

    Case I: u^i * t * a. Case II: t * g. Case III: t * h + u^i * j * a.
    Extra torsion generators u^l * a_l add u^l * e * a_l. A message paired
    with u^l * a must have zero layers from k - l up.

    Raises:
        ValidationError: If the message case does not match the form
        MessageBoundError: If a message polynomial exceeds its degree or layer bound
    """
    if msg.case != form.case:
        raise ValidationError(f"Case {msg.case.value} message for a Case {form.case.value} code", field="case")
    ctx, n = form.ctx, form.n
    chain = generator_chain(form)
    if len(msg.polys) != len(chain):
        raise ValidationError(f"this Case {form.case.value} code takes {len(chain)} message polynomial(s)", field="polys")

    word = SkewPoly.zero(ctx)
    for index, (link, m) in enumerate(zip(chain, msg.polys)):
        level = ctx.k - link.layer if link.layer else None
        _check_message_poly(m, ctx, link.shifts - 1, _message_name(index, form), level=level)
        word = word + _link_part(link, m, ctx)
    return Codeword.from_poly(word.mod_xn(n), n)


def enumerate_messages(form: GeneratorForm, guard: Optional[int] = None) -> Iterator[Message]:
    """Every message of the form's message space."""
    check_guard(cardinality(form), guard or get_settings().enumeration_guard, "message enumeration")
    ctx = form.ctx

    def polys(count: int, level: int) -> List[SkewPoly]:
        elements = [a for a in ctx.elements() if not any(a.coeffs[level:])]
        return [SkewPoly(ctx, tuple(combo)) for combo in itertools.product(elements, repeat=count)]

    choices = [polys(link.shifts, ctx.k - link.layer) for link in generator_chain(form)]
    for combo in itertools.product(*choices):
        yield Message(form.case, combo)


# Checks and syndromes


def x_power_minus_one_base(GF, n: int) -> galois.Poly:
    """x^n - 1 over F_p."""
    return galois.Poly.Degrees([n, 0], coeffs=[1, GF.characteristic - 1], field=GF)


def _base_divisor(form: GeneratorForm, poly: SkewPoly, name: str) -> galois.Poly:
    GF = form.ctx.base_field
    xn = x_power_minus_one_base(GF, form.n)
    if not any(poly.layer(0)):
        raise ValidationError(f"{name} mod u is zero", field=name)
    base = base_poly(GF, poly.layer(0))
    if xn % base != galois.Poly.Zero(GF):
        raise ValidationError(f"{name} mod u does not divide x^{form.n} - 1 over F_{form.ctx.p}", field=name)
    return xn // base


def _generator_name(form: GeneratorForm, link: GeneratorLink) -> str:
    if link.layer == 0:
        return "g" if form.case == CodeCase.II else "h"
    return "a" if link.layer == form.i else f"a_{link.layer}"


def layer_check_polys(form: GeneratorForm) -> Tuple[galois.Poly, ...]:
    """
    One F_p check polynomial per u-layer.

    Layer l is checked by (x^n - 1)/(b mod u) for the generator u^j * b with
    the largest j <= l: g on every layer in Case II; h below layer i and a
    from layer i up in Case III. Layers below every generator carry no
    codeword content and are checked by 1.

    Raises:
        ValidationError: If a base polynomial does not divide x^n - 1
    """
    GF = form.ctx.base_field
    chain = generator_chain(form)
    divisors = [_base_divisor(form, link.base, _generator_name(form, link)) for link in chain]
    checks = []
    for layer in range(form.ctx.k):
        governing = [index for index, link in enumerate(chain) if link.layer <= layer]
        checks.append(divisors[governing[-1]] if governing else galois.Poly.One(GF))
    return tuple(checks)


def _cyclic_coeffs(poly: galois.Poly, n: int) -> np.ndarray:
    """Ascending coefficients of poly mod x^n - 1."""
    values = np.zeros(n, dtype=np.int64)
    coefficients = np.asarray(poly.coeffs[::-1], dtype=np.int64)
    for e, c in enumerate(coefficients):
        values[e % n] += c
    return values


def syndrome_matrix(checks: Sequence[galois.Poly], n: int, p: int) -> np.ndarray:
    """
    Row c of the matrix is the flattened syndrome tuple of span layout column c.

    Syndromes are F_p-linear, so a layout vector's syndrome is vector @ S mod p.
    """
    k = len(checks)
    matrix = np.zeros((n * k, n * k), dtype=np.int64)
    for layer, check in enumerate(checks):
        base = _cyclic_coeffs(check, n)
        for degree in range(n):
            row = column_index(n, k, degree, layer)
            matrix[row, layer * n:(layer + 1) * n] = np.roll(base, degree)
    return matrix % p


def _key_of(flat: np.ndarray, n: int, k: int) -> SyndromeKey:
    return tuple(tuple(int(c) for c in flat[layer * n:(layer + 1) * n]) for layer in range(k))


def syndromes(received: Codeword, checks: Sequence[galois.Poly]) -> Tuple[galois.Poly, ...]:
    """e_l = (layer l of received) * check_l mod x^n - 1, over F_p."""
    ctx, n = received.ctx, received.n
    if len(checks) != ctx.k:
        raise ValidationError(f"expected {ctx.k} check polynomials, got {len(checks)}", field="checks")
    GF = ctx.base_field
    word = received.to_poly()
    result = []
    for layer, check in enumerate(checks):
        product = base_poly(GF, word.layer(layer)) * check
        result.append(base_poly(GF, _cyclic_coeffs(product, n) % ctx.p))
    return tuple(result)


def syndrome_key(values: Sequence[galois.Poly], n: int) -> SyndromeKey:
    """Hashable form of a syndrome tuple: n ascending coefficients per layer."""
    key = []
    for poly in values:
        row = [0] * n
        for e, c in enumerate(poly.coeffs[::-1]):
            row[e] = int(c)
        key.append(tuple(row))
    return tuple(key)


def syndromes_characterize(form: GeneratorForm) -> bool:
    """Whether zero syndromes hold exactly on the code for this form's checks."""
    code = form.code()
    ctx, n = form.ctx, form.n
    checks = layer_check_polys(form)
    matrix = syndrome_matrix(checks, n, ctx.p)
    if code.basis.dim and ((code.basis.rows @ matrix) % ctx.p).any():
        return False
    xn = x_power_minus_one_base(ctx.base_field, n)
    kernel_dim = sum(n - (xn // check).degree for check in checks)
    return kernel_dim == code.basis.dim


# Syndrome table


def pattern_count(n: int, k: int, p: int, max_weight: int) -> int:
    slots = n * k
    return sum(math.comb(slots, w) * (p - 1) ** w for w in range(max_weight + 1))


def build_syndrome_table(
    form: GeneratorForm, max_weight: int = 1, strict: bool = False, guard: Optional[int] = None
) -> SyndromeTable:
    """
    Table of every error pattern of weight <= max_weight by syndrome.

    A nonzero pattern with the zero syndrome always fails. Other patterns
    sharing a syndrome keep the one with the smallest leader key and mark the
    syndrome ambiguous; ``strict`` fails on those too.

    Raises:
        ValidationError: If max_weight is negative
        GuardExceededError: If the pattern count exceeds the guard
        SyndromeCollisionError: On an undetectable pattern, or any collision when strict
    """
    if max_weight < 0:
        raise ValidationError(f"max_weight must be >= 0, got {max_weight}", field="max_weight")
    ctx, n, k, p = form.ctx, form.n, form.ctx.k, form.ctx.p
    check_guard(pattern_count(n, k, p, max_weight), guard or get_settings().syndrome_pattern_guard, "error patterns")
    checks = layer_check_polys(form)
    matrix = syndrome_matrix(checks, n, p)

    zero_key = _key_of(np.zeros(n * k, dtype=np.int64), n, k)
    entries: Dict[SyndromeKey, ErrorPattern] = {zero_key: ErrorPattern()}
    ambiguous = set()
    slots = [(position, layer) for position in range(n) for layer in range(k)]

    with PerformanceMonitor("build_syndrome_table", n=n, max_weight=max_weight):
        for weight in range(1, max_weight + 1):
            for chosen in itertools.combinations(slots, weight):
                rows = matrix[[column_index(n, k, position, layer) for position, layer in chosen]]
                magnitudes = digit_rows(0, (p - 1) ** weight, p - 1, weight) + 1
                for mags, flat in zip(magnitudes, (magnitudes @ rows) % p):
                    key = _key_of(flat, n, k)
                    pattern = ErrorPattern(tuple((pos, layer, int(m)) for (pos, layer), m in zip(chosen, mags)))
                    if key == zero_key:
                        raise SyndromeCollisionError(
                            "an error pattern has the zero syndrome and cannot be detected",
                            details={"pattern": [list(term) for term in pattern.terms]},
                        )
                    current = entries.get(key)
                    if current is None:
                        entries[key] = pattern
                        continue
                    if strict:
                        raise SyndromeCollisionError(
                            "distinct error patterns share a syndrome",
                            details={"patterns": [[list(t) for t in current.terms], [list(t) for t in pattern.terms]]},
                        )
                    ambiguous.add(key)
                    if pattern.leader_key() < current.leader_key():
                        entries[key] = pattern

    logger.info("syndrome_table_built", n=n, max_weight=max_weight, entries=len(entries), ambiguous=len(ambiguous))
    return SyndromeTable(ctx, n, checks, max_weight, entries, frozenset(ambiguous))


def correction_radius(form: GeneratorForm, max_weight: int, guard: Optional[int] = None) -> int:
    """Largest w <= max_weight whose strict table builds without collision."""
    for weight in range(1, max_weight + 1):
        try:
            build_syndrome_table(form, weight, strict=True, guard=guard)
        except SyndromeCollisionError:
            return weight - 1
    return max_weight


# Decoding


def apply_error(word: Codeword, pattern: ErrorPattern) -> Codeword:
    return word + pattern.to_codeword(word.ctx, word.n)


def extract_message(form: GeneratorForm, word: Codeword) -> Message:
    """
    Message of a codeword by right division.

    Raises:
        UncorrectableError: If the word is not a codeword of the form
    """
    ctx = form.ctx
    rest = word.to_poly()
    parts = []
    for link in generator_chain(form):
        if link.layer == 0:
            quotient, rest = rest.right_divmod(link.base)
        elif rest.is_zero():
            quotient = SkewPoly.zero(ctx)
        else:
            if rest.valuation() < link.layer:
                raise UncorrectableError(f"word is not divisible by u^{link.layer}")
            quotient, remainder = rest.shift_down(link.layer).right_divmod(link.base)
            quotient, rest = quotient.to_level(ctx), remainder.shift_up(link.layer, ctx)
        parts.append(quotient)
    if not rest.is_zero():
        raise UncorrectableError("word is not a codeword", details={"remainder": str(rest)})
    message = Message(form.case, tuple(parts))
    try:
        again = encode(form, message)
    except MessageBoundError as exc:
        raise UncorrectableError("word is not a codeword", details=exc.details) from exc
    if again != word:
        raise UncorrectableError("word is not a codeword")
    return message


def decode(received: Codeword, form: GeneratorForm, table: SyndromeTable) -> DecodeResult:
    """
    Correct a received word by syndrome lookup and recover its message.

    Raises:
        UncorrectableError: If the syndrome is not in the table or the corrected word is not a codeword
    """
    if received.ctx != form.ctx or received.n != form.n:
        raise RingMismatchError(f"received word over {received.ctx} of length {received.n} for code over {form.ctx}")
    values = syndromes(received, table.checks)
    key = syndrome_key(values, received.n)
    pattern = table.lookup(key)
    if pattern is None:
        track_decode("uncorrectable")
        raise UncorrectableError(
            "syndrome not in table", syndrome=[list(row) for row in key], details={"syndrome": [list(row) for row in key]}
        )
    corrected = received - pattern.to_codeword(received.ctx, received.n)
    try:
        message = extract_message(form, corrected)
    except UncorrectableError:
        track_decode("not_codeword")
        raise
    status = "clean" if pattern.weight == 0 else "corrected"
    track_decode(status)
    logger.debug("word_decoded", status=status, error=list(pattern.terms), ambiguous=key in table.ambiguous)
    return DecodeResult(corrected, message, pattern, values, status, key in table.ambiguous)

