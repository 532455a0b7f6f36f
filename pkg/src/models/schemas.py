"""
Document schemas and the text syntax for ring elements and skew polynomials.
"""
import re
from typing import List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from src.models.ring import ChainRingElement, RingContext
from src.models.skew_poly import SkewPoly
from src.utils.errors import ParseError, SkewCodeError

ElementInput = Union[int, List[int]]
PolyInput = Union[str, List[ElementInput]]

_ELEMENT_TERM = re.compile(r"^(?P<coef>\d*)\*?(?P<u>u(?:\^(?P<exp>\d+))?)?$")
_X_POWER = re.compile(r"^x(?:\^(?P<exp>\d+))?$")


# Text syntax


def _split_terms(text: str) -> List[str]:
    """Split on top-level + and -, keeping each term's sign."""
    terms, depth, current = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}", text=text)
        if ch in "+-" and depth == 0 and current.strip() not in ("", "-", "+"):
            terms.append(current)
            current = ""
        current += ch
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}", text=text)
    if current.strip():
        terms.append(current)
    return [t.replace(" ", "") for t in terms]


def _signed(term: str):
    negative = False
    while term and term[0] in "+-":
        negative ^= term[0] == "-"
        term = term[1:]
    return negative, term


def _strip_parens(text: str) -> str:
    while text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
        text = text[1:-1]
    return text


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def parse_element(text: str, ctx: RingContext) -> ChainRingElement:
    """
    Parse ``1+4u+u^2``, ``2u``, ``-u``, ``0`` into an element of R_k.

    Raises:
        ParseError: If the text is not a sum of c*u^j terms
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty ring element", text=text)
    coeffs = [0] * ctx.k
    for raw in _split_terms(text.strip()):
        negative, term = _signed(raw)
        if term.startswith("(") and term.endswith(")") and _balanced(term[1:-1]):
            inner = parse_element(term[1:-1], ctx)
            value = -inner if negative else inner
            coeffs = [a + b for a, b in zip(coeffs, value.coeffs)]
            continue
        match = _ELEMENT_TERM.match(term)
        if not match or not term:
            raise ParseError(f"cannot parse ring element term {raw!r}", text=text)
        coefficient = int(match.group("coef")) if match.group("coef") else 1
        layer = 0
        if match.group("u"):
            layer = int(match.group("exp")) if match.group("exp") else 1
        if layer >= ctx.k:
            continue
        coeffs[layer] += -coefficient if negative else coefficient
    return ctx.element(coeffs)


def _parse_monomial(term: str, ctx: RingContext) -> SkewPoly:
    negative, body = _signed(term)
    if not body:
        raise ParseError(f"empty term in {term!r}", text=term)

    scaled = re.match(r"^(?P<coef>[^()]*)\((?P<inner>.*)\)$", body)
    if scaled and "x" in scaled.group("inner") and _balanced(scaled.group("inner")):
        scalar = parse_element(scaled.group("coef").rstrip("*") or "1", ctx)
        result = parse_poly(scaled.group("inner"), ctx).scale_left(scalar)
        return -result if negative else result

    depth, split = 0, None
    for index, ch in enumerate(body):
        depth += ch == "("
        depth -= ch == ")"
        if ch == "x" and depth == 0:
            split = index
            break
    if split is None:
        coefficient, degree = _strip_parens(body), 0
    else:
        coefficient = body[:split].rstrip("*")
        power = _X_POWER.match(body[split:])
        if not power:
            raise ParseError(f"cannot parse power of x in {term!r}", text=term)
        degree = int(power.group("exp")) if power.group("exp") else 1
        coefficient = _strip_parens(coefficient) if coefficient else "1"
    element = parse_element(coefficient, ctx)
    if negative:
        element = -element
    return SkewPoly.monomial(element, degree)


def parse_poly(text: str, ctx: RingContext) -> SkewPoly:
    """
    Parse a skew polynomial such as ``(1+u+2u^2)x^5 + (2u+u^2)x^4 + 1``.

    Terms are joined by ``+`` or ``-``; a coefficient with several u-terms is
    parenthesized; ``u(x^2-x+1)`` scales a polynomial on the left.

    Raises:
        ParseError: On malformed text
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial", text=text)
    result = SkewPoly.zero(ctx)
    for term in _split_terms(text.strip()):
        result = result + _parse_monomial(term, ctx)
    return result


def element_from_input(value: Union[str, ElementInput], ctx: RingContext) -> ChainRingElement:
    if isinstance(value, str):
        return parse_element(value, ctx)
    try:
        return ctx.element(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"invalid ring element {value!r}", text=str(value)) from exc


def poly_from_input(value: PolyInput, ctx: RingContext, descending: bool = False) -> SkewPoly:
    """
    A polynomial from text or a coefficient array.

    Arrays list one element per degree (an int or u-coefficients), ascending
    unless ``descending`` is set.
    """
    if isinstance(value, str):
        return parse_poly(value, ctx)
    if not isinstance(value, (list, tuple)):
        raise ParseError(f"invalid polynomial {value!r}", text=str(value))
    entries = list(value)[::-1] if descending else list(value)
    try:
        return SkewPoly.from_coeffs(ctx, entries)
    except SkewCodeError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"invalid polynomial {value!r}", text=str(value)) from exc


def poly_rows(f: SkewPoly, n: Optional[int] = None, descending: bool = False) -> List[List[int]]:
    rows = [c.to_list() for c in f.to_vector(n)] if n is not None else f.to_rows()
    return rows[::-1] if descending else rows


# Documents


class RingContextModel(BaseModel):
    p: int
    k: int
    s: int

    def to_context(self) -> RingContext:
        return RingContext(self.p, self.k, self.s)

    @classmethod
    def from_context(cls, ctx: RingContext) -> "RingContextModel":
        return cls(p=ctx.p, k=ctx.k, s=ctx.s)


class PolyModel(BaseModel):
    """A polynomial in both canonical array and display form."""

    rows: List[List[int]]
    text: str

    @classmethod
    def from_poly(cls, f: SkewPoly, descending: bool = False) -> "PolyModel":
        return cls(rows=poly_rows(f, descending=descending), text=str(f))


class TorsionModel(BaseModel):
    """An extra torsion generator u^layer * a."""

    layer: int
    a: PolyModel


class FormModel(BaseModel):
    case: str
    r: int
    i: Optional[int] = None
    t: Optional[int] = None
    g: Optional[PolyModel] = None
    monic_g: Optional[PolyModel] = None
    h: Optional[PolyModel] = None
    a1: Optional[PolyModel] = None
    extended_torsion: bool = False
    extra_torsion: List[TorsionModel] = Field(default_factory=list)

    @field_validator("case")
    @classmethod
    def validate_case(cls, v: str) -> str:
        if v not in ("I", "II", "III"):
            raise ValueError("case must be I, II or III")
        return v


class StatsModel(BaseModel):
    rank: int
    cardinality: int
    min_distance: Optional[int] = None


class CodeDocument(BaseModel):
    """Code description: ring, length, generators, and optional form and stats."""

    ctx: RingContextModel
    n: int = Field(ge=1)
    generators: List[PolyInput] = Field(min_length=1)
    form: Optional[FormModel] = None
    stats: Optional[StatsModel] = None


class MessageDocument(BaseModel):
    case: str
    polys: List[PolyInput]


class MatrixReport(BaseModel):
    name: str
    rows: List[List[List[int]]]
    text: List[List[str]]


class DiscrepancyModel(BaseModel):
    matrix: str
    row: int
    computed: List[List[int]]
    untwisted: List[List[int]]


class AnalysisReport(BaseModel):
    code: CodeDocument
    gamma: List[PolyModel]
    generator_matrix: MatrixReport
    parity_check: Optional[MatrixReport] = None
    cofactor: Optional[PolyModel] = None
    discrepancies: List[DiscrepancyModel] = []
    case3_constraints: Optional[bool] = None


class CodeStatsModel(BaseModel):
    generator: PolyModel
    case: str
    rank: int
    cardinality: int
    min_distance: Optional[int] = None


class FactorRowModel(BaseModel):
    family: int
    parameters: List[int]
    f1: PolyModel
    f2: PolyModel
    verified: bool
    code_stats: List[CodeStatsModel] = []


class Table1RowModel(BaseModel):
    row: int
    factors: List[PolyModel]
    distinct_factors: int
    verified: bool
    pairs: List[FactorRowModel]
    codes: List[CodeStatsModel]


class CensusModel(BaseModel):
    family_pairs: int
    verified_pairs: int
    distinct_factors: int
    enumerated_factors: int
    matches_enumeration: bool
    distinct_generators: int
    distinct_codes: int
    ranks: List[int]
    cardinalities: List[int]
    enumeration_checked: int
    enumeration_agrees: bool


class Table1Document(BaseModel):
    rows: List[Table1RowModel]
    census: Optional[CensusModel] = None


class FactorReport(BaseModel):
    ctx: RingContextModel
    n: int
    d1: int
    level: int
    target: PolyModel
    pairs: List[FactorRowModel]
    distinct_f1: int
    distinct_f2: int


class EncodeReport(BaseModel):
    codeword: List[List[int]]
    text: str


class DecodeReport(BaseModel):
    status: str
    syndromes: List[List[int]]
    error_pattern: List[List[int]]
    ambiguous: bool
    corrected: List[List[int]]
    corrected_text: str
    message: MessageDocument


class CheckResult(BaseModel):
    name: str
    status: str
    detail: Optional[str] = None
    diff: Optional[List[str]] = None


class SelftestSummary(BaseModel):
    passed: int
    failed: int
    skipped: int
    results: List[CheckResult]
