"""
Skew cyclic codes: construction, enumeration, classification into the
three generator cases, minimal generating sets, matrices and distance.
"""
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from src.models.codeword import Codeword, poly_to_vector, vectors_to_symbols
from src.models.ring import ChainRingElement, RingContext
from src.models.skew_poly import SkewPoly
from src.services.monitoring import PerformanceMonitor
from src.services.span import SpanBasis, linear_span, module_span, row_reduce
from src.utils.errors import ClassificationError, RingMismatchError, ValidationError
from src.utils.logger import get_logger, log_performance

logger = get_logger(__name__)


class CodeCase(str, Enum):
    """Generator shape of a skew cyclic code."""

    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class SkewCyclicCode:
    """Left submodule of R_k[x; theta]/<x^n - 1> given by generators."""

    ctx: RingContext
    n: int
    generators: Tuple[SkewPoly, ...]

    @cached_property
    def basis(self) -> SpanBasis:
        return module_span(self.ctx, self.n, self.generators)

    @property
    def size(self) -> int:
        return self.basis.size

    def contains(self, word) -> bool:
        f = word.to_poly() if isinstance(word, Codeword) else word
        return self.basis.contains(f)

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewCyclicCode) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)


@dataclass(frozen=True)
class GeneratorForm:
    """Classified shape of a code; subclasses fix the case."""

    ctx: RingContext
    n: int
    r: int

    case = None

    def generators(self) -> Tuple[SkewPoly, ...]:
        raise NotImplementedError

    def torsion_chain(self) -> Tuple[Tuple[int, SkewPoly], ...]:
        """(layer, a) pairs, by increasing layer, whose u^layer * a are the torsion generators."""
        return ()

    def code(self) -> SkewCyclicCode:
        return SkewCyclicCode(self.ctx, self.n, self.generators())


@dataclass(frozen=True)
class CaseIForm(GeneratorForm):
    """<u^i a^i> with a^i unit-leading over R_(k-i); no unit-leading codeword exists."""

    i: int = 1
    a: SkewPoly = None
    extra_torsion: Tuple[Tuple[int, SkewPoly], ...] = ()

    case = CodeCase.I

    @property
    def torsion_generator(self) -> SkewPoly:
        return self.a.shift_up(self.i, self.ctx)

    def torsion_chain(self) -> Tuple[Tuple[int, SkewPoly], ...]:
        return ((self.i, self.a),) + tuple(self.extra_torsion)

    def generators(self) -> Tuple[SkewPoly, ...]:
        return tuple(a.shift_up(layer, self.ctx) for layer, a in self.torsion_chain())


@dataclass(frozen=True)
class CaseIIForm(GeneratorForm):
    """<g> with g unit-leading of minimal degree."""

    g: SkewPoly = None

    case = CodeCase.II

    @property
    def monic_g(self) -> SkewPoly:
        return self.g.monic()

    def generators(self) -> Tuple[SkewPoly, ...]:
        return (self.g,)


@dataclass(frozen=True)
class CaseIIIForm(GeneratorForm):
    """<h, u^i a^i> with h = g + u p_1 + ... + u^(k-1) p_(k-1) unit-leading of degree r."""

    t: int = 0
    i: int = 1
    h: SkewPoly = None
    a: SkewPoly = None
    extended_torsion: bool = False
    extra_torsion: Tuple[Tuple[int, SkewPoly], ...] = ()

    case = CodeCase.III

    @property
    def g(self) -> SkewPoly:
        """Layer 0 of h, an F_p polynomial viewed over R_k."""
        return SkewPoly.from_base(self.ctx, self.h.layer(0))

    def p_layer(self, j: int) -> SkewPoly:
        """p_j, the u^j layer of h."""
        return SkewPoly.from_base(self.ctx, self.h.layer(j))

    @property
    def torsion_generator(self) -> SkewPoly:
        return self.a.shift_up(self.i, self.ctx)

    def torsion_chain(self) -> Tuple[Tuple[int, SkewPoly], ...]:
        return ((self.i, self.a),) + tuple(self.extra_torsion)

    def generators(self) -> Tuple[SkewPoly, ...]:
        return (self.h,) + tuple(a.shift_up(layer, self.ctx) for layer, a in self.torsion_chain())


@dataclass(frozen=True)
class CodeStats:
    rank: int
    cardinality: int
    min_distance: Optional[int] = None


# Codewords


def tau(ctx: RingContext, c: Codeword) -> Codeword:
    if c.ctx != ctx:
        raise RingMismatchError(f"codeword over {c.ctx} used with {ctx}")
    return c.tau()


def code_from_generators(ctx: RingContext, n: int, gens: Sequence[SkewPoly]) -> SkewCyclicCode:
    """Code handle for the submodule generated by ``gens`` (reduced mod x^n - 1)."""
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}", field="n")
    if not gens:
        raise ValidationError("a code needs at least one generator", field="generators")
    for g in gens:
        if g.ctx != ctx:
            raise RingMismatchError(f"generator over {g.ctx} for a code over {ctx}")
    return SkewCyclicCode(ctx, n, tuple(g.mod_xn(n) for g in gens))


def enumerate_codewords(code: SkewCyclicCode, guard: Optional[int] = None) -> FrozenSet[Codeword]:
    """Every codeword, as the F_p span of u^l x^j g over the generators."""
    with PerformanceMonitor("enumerate_codewords", n=code.n, dim=code.basis.dim):
        return frozenset(code.basis.codewords(guard))


def is_skew_cyclic_closed(words: Iterable[Codeword]) -> bool:
    """Whether a finite set of codewords is closed under tau, addition and left scalars."""
    words = set(words)
    if not words:
        return False
    sample = next(iter(words))
    ctx, n = sample.ctx, sample.n
    if Codeword.zero(ctx, n) not in words:
        return False
    basis = row_reduce(ctx, n, [poly_to_vector(w.to_poly(), n) for w in words])
    if basis.size != len(words):
        return False
    u = ctx.u_power(1)
    for w in words:
        if w.tau() not in words:
            return False
        if ctx.k > 1 and w.scale(u) not in words:
            return False
    return True


# Classification


def _pick_generator(code: SkewCyclicCode, degree: int, valuation: int) -> Optional[SkewPoly]:
    """A supplied generator divisible by u^valuation with the given degree and leading valuation, if any."""
    for g in code.generators:
        if not g.is_zero() and g.degree == degree and g.leading_valuation() == valuation and g.valuation() >= valuation:
            return g
    return None


def _form_from_pivots(code: SkewCyclicCode, prefer_supplied: bool) -> GeneratorForm:
    basis = code.basis
    ctx, n = code.ctx, code.n
    pivots = basis.pivots

    def representative(degree: int, valuation: int) -> SkewPoly:
        chosen = _pick_generator(code, degree, valuation) if prefer_supplied else None
        if chosen is not None:
            return chosen
        # torsion representatives must be multiples of u^valuation
        chosen = basis.divisible_part(valuation).row_for(degree, valuation)
        if chosen is None:
            raise ClassificationError(
                "no codeword divisible by u^layer at a torsion pivot",
                details={"degree": degree, "layer": valuation, "n": n},
            )
        return chosen

    # (layer, degree) where the smallest degree of a codeword with leading valuation <= layer drops
    chain, best = [], n
    for layer in range(ctx.k):
        degrees = [degree for degree, pivot_layer in pivots if pivot_layer == layer]
        if degrees and min(degrees) < best:
            best = min(degrees)
            chain.append((layer, best))

    torsion = [(layer, representative(degree, layer).shift_down(layer)) for layer, degree in chain if layer > 0]
    if chain[0][0] == 0:
        r = chain[0][1]
        if not torsion:
            return CaseIIForm(ctx, n, r, g=representative(r, 0))
        (i, a), t = torsion[0], chain[1][1]
        return CaseIIIForm(
            ctx, n, r, t=t, i=i, h=representative(r, 0), a=a, extended_torsion=i > 1, extra_torsion=tuple(torsion[1:])
        )
    (i, a), r = torsion[0], chain[0][1]
    return CaseIForm(ctx, n, r, i=i, a=a, extra_torsion=tuple(torsion[1:]))


@log_performance(threshold_ms=2000)
def classify(code: SkewCyclicCode) -> GeneratorForm:
    """
    Generator form of a code from the pivot structure of its span.

    A minimal-degree unit-leading codeword gives Case II; no unit-leading
    codeword at all gives Case I; otherwise Case III. Every further u-layer
    where the minimal degree drops adds a generator to the torsion chain.
    Supplied generators are kept as representatives when they have the
    required degree and leading valuation. The form is verified to regenerate the code.

    Raises:
        ValidationError: If the code is the zero code
        ClassificationError: If no form regenerates the code
    """
    if code.basis.dim == 0:
        raise ValidationError("the zero code has no generator form")
    for prefer_supplied in (True, False):
        form = _form_from_pivots(code, prefer_supplied)
        if form.code().basis == code.basis:
            logger.debug("code_classified", case=form.case.value, r=form.r, n=code.n)
            return form
    raise ClassificationError(
        "generator form does not regenerate the code",
        details={"case": form.case.value, "n": code.n, "dim": code.basis.dim},
    )


# Spanning sets and sizes


def _x_shifts(f: SkewPoly, count: int, n: int) -> List[SkewPoly]:
    x = SkewPoly.x(f.ctx)
    shifts, current = [], f.mod_xn(n)
    for _ in range(count):
        shifts.append(current)
        current = (x * current).mod_xn(n)
    return shifts


class GeneratorLink(NamedTuple):
    """One generator of a form with the number of its x-shifts in Gamma."""

    layer: int
    base: SkewPoly
    generator: SkewPoly
    shifts: int


def generator_chain(form: GeneratorForm) -> List[GeneratorLink]:
    """
    Generators by increasing layer. Each contributes as many shifts as its
    degree falls below the previous generator's (n for the first).
    """
    links = []
    if isinstance(form, (CaseIIForm, CaseIIIForm)):
        unit = form.g if isinstance(form, CaseIIForm) else form.h
        links.append((0, unit, unit))
    links.extend((layer, a, a.shift_up(layer, form.ctx)) for layer, a in form.torsion_chain())
    chain, previous = [], form.n
    for layer, base, generator in links:
        chain.append(GeneratorLink(layer, base, generator, previous - base.degree))
        previous = base.degree
    return chain


def minimal_generating_polys(form: GeneratorForm) -> List[SkewPoly]:
    return [f for link in generator_chain(form) for f in _x_shifts(link.generator, link.shifts, form.n)]


def minimal_generating_set(form: GeneratorForm) -> List[Codeword]:
    """Gamma: shifts of the generators whose R_k-linear span is the code."""
    return [Codeword.from_poly(f, form.n) for f in minimal_generating_polys(form)]


def rank(form: GeneratorForm) -> int:
    """Size of the minimal generating set."""
    return sum(link.shifts for link in generator_chain(form))


def cardinality(form: GeneratorForm) -> int:
    """Exact code size: p^(k - layer) choices per shift of each generator."""
    p, k = form.ctx.p, form.ctx.k
    return math.prod((p ** (k - link.layer)) ** link.shifts for link in generator_chain(form))


def message_space_size(form: GeneratorForm) -> int:
    """Number of distinct messages; encoding is a bijection onto the code."""
    return cardinality(form)


# Matrices


def generator_matrix(form: GeneratorForm) -> List[List[ChainRingElement]]:
    """Rows are x^j * gamma mod x^n - 1, theta applied on every shift."""
    return [list(f.to_vector(form.n)) for f in minimal_generating_polys(form)]


def _plain_shifts(f: SkewPoly, count: int, n: int) -> List[List[ChainRingElement]]:
    """Cyclic shifts that move coefficients without applying theta."""
    base = list(f.mod_xn(n).to_vector(n))
    return [base[-j:] + base[:-j] if j else list(base) for j in range(count)]


def untwisted_generator_matrix(form: GeneratorForm) -> List[List[ChainRingElement]]:
    """Rows shifted without theta, the convention printed in classical tables."""
    return [row for link in generator_chain(form) for row in _plain_shifts(link.generator, link.shifts, form.n)]


def cofactor(form: CaseIIForm) -> SkewPoly:
    """k(x) with x^n - 1 = k(x) * g(x)."""
    if not isinstance(form, CaseIIForm):
        raise ValidationError("a cofactor exists only for Case II codes", field="form")
    xn = SkewPoly.x_power_minus_one(form.ctx, form.n)
    k_poly, remainder = xn.right_divmod(form.g)
    if not remainder.is_zero():
        raise ValidationError(f"{form.g} does not right-divide x^{form.n} - 1", field="g")
    return k_poly


def parity_check_display(form: GeneratorForm) -> List[List[ChainRingElement]]:
    """Rows x^j * k(x) mod x^n - 1 for the cofactor k of a Case II generator."""
    k_poly = cofactor(form)
    return [list(f.to_vector(form.n)) for f in _x_shifts(k_poly, max(form.r, 1), form.n)]


def untwisted_parity_check_display(form: GeneratorForm) -> List[List[ChainRingElement]]:
    k_poly = cofactor(form)
    return _plain_shifts(k_poly, max(form.r, 1), form.n)


@dataclass(frozen=True)
class RowDiscrepancy:
    matrix: str
    row: int
    computed: Tuple[ChainRingElement, ...]
    untwisted: Tuple[ChainRingElement, ...]


def matrix_discrepancies(form: GeneratorForm) -> List[RowDiscrepancy]:
    """Rows where theta-twisted shifts differ from plain cyclic shifts."""
    pairs = [("G", generator_matrix(form), untwisted_generator_matrix(form))]
    if isinstance(form, CaseIIForm):
        pairs.append(("H", parity_check_display(form), untwisted_parity_check_display(form)))
    found = []
    for name, computed, untwisted in pairs:
        for index, (row, plain) in enumerate(zip(computed, untwisted)):
            if row != plain:
                found.append(RowDiscrepancy(name, index, tuple(row), tuple(plain)))
    return found


# Distance and constraints


def min_distance(code: SkewCyclicCode, guard: Optional[int] = None) -> int:
    """
    Minimum Hamming weight over nonzero codewords, by enumeration.

    Raises:
        ValidationError: For the zero code
        GuardExceededError: If the code is larger than the guard
    """
    if code.basis.dim == 0:
        raise ValidationError("the zero code has no minimum distance")
    n, k = code.n, code.ctx.k
    best = n
    with PerformanceMonitor("min_distance", n=n, size=code.size):
        for vectors in code.basis.iter_vectors(guard):
            weights = vectors_to_symbols(vectors, n, k).any(axis=2).sum(axis=1)
            nonzero = weights[weights > 0]
            if nonzero.size:
                best = min(best, int(nonzero.min()))
            if best == 1:
                break
    return best


def code_stats(code: SkewCyclicCode, form: Optional[GeneratorForm] = None, guard: Optional[int] = None,
               with_distance: bool = True) -> CodeStats:
    form = form or classify(code)
    distance = min_distance(code, guard) if with_distance else None
    return CodeStats(rank=rank(form), cardinality=code.size, min_distance=distance)


def check_case3_constraints(form: CaseIIIForm) -> bool:
    """
    The two divisibility conditions a Case III pair must satisfy.

    (i) a^i right-divides h mod u^(k-i) over R_(k-i).
    (ii) ((x^n - 1)/g) * (u p_1 + ... + u^(k-1) p_(k-1)) lies in the torsion
    submodule <u^i a^i, ...>.
    """
    if not isinstance(form, CaseIIIForm):
        raise ValidationError("constraints apply to Case III forms only", field="form")
    ctx, n = form.ctx, form.n
    level = ctx.k - form.i
    h_low = form.h.truncate(level)
    if not h_low.right_divmod(form.a)[1].is_zero():
        return False

    base_xn = SkewPoly.x_power_minus_one(ctx.at_level(1), n)
    k_poly, remainder = base_xn.right_divmod(form.g.truncate(1))
    if not remainder.is_zero():
        return False
    torsion_part = form.h - form.g
    product = (k_poly.to_level(ctx) * torsion_part).mod_xn(n)
    return module_span(ctx, n, form.generators()[1:]).contains(product)


def code_equal(first: SkewCyclicCode, second: SkewCyclicCode) -> bool:
    """Equality as codeword sets."""
    return first.basis == second.basis


def regenerated_equals(form: GeneratorForm, code: SkewCyclicCode) -> bool:
    return form.code().basis == code.basis


def gamma_is_minimal(form: GeneratorForm) -> bool:
    """Removing any element of Gamma strictly shrinks its R_k-linear span."""
    polys = minimal_generating_polys(form)
    full = linear_span(form.ctx, form.n, polys)
    for index in range(len(polys)):
        rest = polys[:index] + polys[index + 1:]
        if linear_span(form.ctx, form.n, rest).dim >= full.dim:
            return False
    return True
