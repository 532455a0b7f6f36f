"""
Factorizations of x^n - 1 (or another unit-leading target) in R_j[x; theta].

Factor pairs are found by exhaustive search over one factor's coefficient
space followed by a single division, or by lifting a verified pair one
u-layer at a time. Every returned pair is re-verified by multiplication.
"""
import itertools
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.config import get_settings
from src.models.ring import RingContext
from src.models.skew_poly import SkewPoly
from src.services.monitoring import FACTOR_CANDIDATES, PerformanceMonitor
from src.services.skew_code import code_from_generators, classify, min_distance, rank
from src.utils.errors import DivisionError, ValidationError
from src.utils.helpers import check_guard, digit_rows, split_evenly
from src.utils.logger import get_logger

logger = get_logger(__name__)

TABLE1_RING = (5, 3, 4)
TABLE1_LENGTH = 4
FACTOR_LEVEL = 2

# (lead, constant) of each quadratic factor as (F_5 part, sign of u*v).
TABLE1_FAMILIES: Dict[int, Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]] = {
    1: (((1, 1), (1, 1)), ((1, -1), (4, 1))),
    2: (((4, -1), (1, 1)), ((4, 1), (4, 1))),
    3: (((2, 1), (2, 1)), ((3, 1), (2, -1))),
    4: (((2, -1), (3, 1)), ((3, -1), (3, -1))),
}

# (lead, constant) of each linear factor of x^2 + 1 as (F_5 part, sign of u*t, sign of u*s).
CENSUS_FAMILIES: Dict[int, Tuple[Tuple[Tuple[int, int, int], Tuple[int, int, int]], ...]] = {
    1: (((1, 1, 0), (2, 0, 1)), ((1, 1, 0), (3, 0, 1))),
    2: (((4, 1, 0), (2, 0, 1)), ((4, 1, 0), (3, 0, 1))),
    3: (((2, 1, 0), (1, 0, -1)), ((3, -1, 0), (1, 0, 1))),
    4: (((2, 1, 0), (4, 0, -1)), ((3, -1, 0), (4, 0, 1))),
}


@dataclass(frozen=True)
class FactorPair:
    """f1 * f2 = target in R_level[x; theta]; target defaults to x^n - 1."""

    f1: SkewPoly
    f2: SkewPoly
    level: int
    n: int
    target: Optional[SkewPoly] = None

    @property
    def ctx(self) -> RingContext:
        return self.f1.ctx

    def product_target(self) -> SkewPoly:
        if self.target is not None:
            return self.target
        return SkewPoly.x_power_minus_one(self.ctx, self.n)


@dataclass(frozen=True)
class CodeSummary:
    generator: SkewPoly
    case: str
    rank: int
    cardinality: int
    min_distance: Optional[int] = None


@dataclass(frozen=True)
class Table1Row:
    row: int
    parameters: Tuple[int, ...]
    pairs: Tuple[FactorPair, ...]
    factors: Tuple[SkewPoly, ...]
    verified: bool
    codes: Tuple[CodeSummary, ...]


@dataclass(frozen=True)
class CensusReport:
    family_pairs: int
    verified_pairs: int
    distinct_factors: int
    enumerated_factors: int
    matches_enumeration: bool
    distinct_generators: int
    distinct_codes: int
    ranks: Tuple[int, ...]
    cardinalities: Tuple[int, ...]
    enumeration_checked: int
    enumeration_agrees: bool
    codes: Tuple[CodeSummary, ...]


@dataclass(frozen=True)
class Table1Report:
    rows: Tuple[Table1Row, ...]
    census: Optional[CensusReport] = None


def verify_factorization(pair: FactorPair) -> bool:
    """Whether f1 * f2 equals the target exactly, both factors unit-leading."""
    f1, f2 = pair.f1, pair.f2
    if f1.ctx != f2.ctx or f1.ctx.k != pair.level:
        return False
    if not (f1.is_unit_leading() and f2.is_unit_leading()):
        return False
    target = pair.product_target()
    if target.ctx != f1.ctx or f1.degree + f2.degree != target.degree:
        return False
    return f1 * f2 == target


def _resolve_target(ctx: RingContext, n: int, target: Optional[SkewPoly]) -> SkewPoly:
    if target is None:
        return SkewPoly.x_power_minus_one(ctx, n)
    moved = target.to_level(ctx)
    if not moved.is_unit_leading():
        raise ValidationError(f"target {target} is not unit-leading in {ctx}", field="target")
    return moved


def _search_leads(
    p: int, k: int, s: int, target_rows: List[List[int]], degree: int, strategy: str, lead_codes: Sequence[int]
) -> List[Tuple[List[List[int]], List[List[int]]]]:
    """Factor pairs whose enumerated factor has one of the given leading coefficients."""
    ctx = RingContext(p, k, s)
    target = SkewPoly.from_rows(ctx, target_rows)
    table = ctx.element_table
    found = []
    for code in lead_codes:
        lead = table[code]
        for lower in itertools.product(table, repeat=degree):
            candidate = SkewPoly(ctx, tuple(lower) + (lead,))
            if strategy == "left":
                quotient, remainder = target.left_divmod(candidate)
                if remainder.is_zero():
                    found.append((candidate.to_rows(), quotient.to_rows()))
            else:
                quotient, remainder = target.right_divmod(candidate)
                if remainder.is_zero():
                    found.append((quotient.to_rows(), candidate.to_rows()))
    return found


def enumerate_factor_pairs(
    ctx: RingContext,
    n: int,
    d1: int,
    level: Optional[int] = None,
    target: Optional[SkewPoly] = None,
    guard: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[FactorPair]:
    """
    Every pair (f1, f2) over R_level with deg f1 = d1 and f1 * f2 = target.

    The smaller of the two coefficient spaces is enumerated: unit-leading
    f1 with left division when d1 < n - d1, otherwise unit-leading f2 with
    right division. A supplied target replaces x^n - 1 and fixes n to its
    degree.

    Raises:
        ValidationError: If d1 is out of range or the target is not unit-leading
        GuardExceededError: If the candidate count exceeds the guard
    """
    settings = get_settings()
    level_ctx = ctx.at_level(level or ctx.k)
    goal = _resolve_target(level_ctx, n, target)
    n = goal.degree
    if d1 < 0 or d1 > n:
        raise ValidationError(f"d1 must lie in [0, {n}], got {d1}", field="d1")

    strategy = "left" if d1 < n - d1 else "right"
    degree = d1 if strategy == "left" else n - d1
    units = level_ctx.units()
    candidates = len(units) * level_ctx.size ** degree
    check_guard(candidates, guard or settings.factor_search_guard, "factor candidates")

    lead_codes = [a.to_int() for a in units]
    workers = workers or settings.workers
    args = (level_ctx.p, level_ctx.k, level_ctx.s, goal.to_rows(), degree, strategy)

    with PerformanceMonitor("factor_search", n=n, d1=d1, level=level_ctx.k, candidates=candidates):
        if workers > 1 and len(lead_codes) > 1:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                tasks = {
                    executor.submit(_search_leads, *args, chunk): index
                    for index, chunk in enumerate(split_evenly(lead_codes, workers))
                }
                results = {}
                for task in as_completed(tasks):
                    results[tasks[task]] = task.result()
            raw = [pair for index in sorted(results) for pair in results[index]]
        else:
            raw = _search_leads(*args, lead_codes)
    FACTOR_CANDIDATES.labels(strategy=strategy).inc(candidates)

    pairs = []
    for f1_rows, f2_rows in raw:
        pair = FactorPair(
            SkewPoly.from_rows(level_ctx, f1_rows),
            SkewPoly.from_rows(level_ctx, f2_rows),
            level_ctx.k,
            n,
            target=goal if target is not None else None,
        )
        if not verify_factorization(pair):
            raise DivisionError(f"search produced an unverified pair ({pair.f1}, {pair.f2})")
        pairs.append(pair)
    logger.info("factor_pairs_found", n=n, d1=d1, level=level_ctx.k, strategy=strategy, pairs=len(pairs))
    return pairs


def _layer_vector(f: SkewPoly, layer: int, size: int) -> np.ndarray:
    values = np.zeros(size, dtype=np.int64)
    coefficients = f.layer(layer)
    values[: len(coefficients)] = coefficients
    return values


def _lift_one_level(pair: FactorPair, target: SkewPoly, guard: int) -> List[FactorPair]:
    """All lifts f_i = g_i + u^j k_i of a verified level-j pair to level j + 1."""
    ctx = pair.ctx
    j = ctx.k
    up = RingContext(ctx.p, j + 1, ctx.s)
    p = ctx.p
    g1, g2 = pair.f1.to_level(up), pair.f2.to_level(up)
    d1, d2 = int(g1.degree), int(g2.degree)
    size = d1 + d2 + 1
    top = up.u_power(j)

    residual = _layer_vector(target - g1 * g2, j, size) % p
    contributions = [_layer_vector(SkewPoly.monomial(top, e) * g2, j, size) for e in range(d1 + 1)]
    contributions += [_layer_vector(g1 * SkewPoly.monomial(top, e), j, size) for e in range(d2 + 1)]
    matrix = np.stack(contributions)
    count = len(contributions)
    check_guard(p ** count, guard, "lift corrections")

    lifts = []
    block = get_settings().enumeration_block
    for start in range(0, p ** count, block):
        digits = digit_rows(start, min(start + block, p ** count), p, count)
        hits = digits[(((digits @ matrix) % p) == residual).all(axis=1)]
        for row in hits:
            k1 = SkewPoly.from_rows(up, [[0] * j + [int(c)] for c in row[: d1 + 1]])
            k2 = SkewPoly.from_rows(up, [[0] * j + [int(c)] for c in row[d1 + 1:]])
            lifted = FactorPair(g1 + k1, g2 + k2, j + 1, pair.n, target if pair.target is not None else None)
            if not verify_factorization(lifted):
                raise DivisionError(f"lift ({lifted.f1}, {lifted.f2}) does not verify")
            lifts.append(lifted)
    return lifts


def lift_from_base(
    g1: SkewPoly,
    g2: SkewPoly,
    target_level: int,
    target: Optional[SkewPoly] = None,
    guard: Optional[int] = None,
) -> List[FactorPair]:
    """
    Every lift of a verified factorization to R_target_level[x; theta].

    Lifting proceeds one u-layer at a time; each step adds u^j k_i(x) to each
    factor with k_i over F_p and deg k_i <= deg g_i. A target level equal to
    the source level returns the source pair.

    Raises:
        ValidationError: If the source pair does not verify or the level is below it
        GuardExceededError: If a single step has too many corrections to try
    """
    source_ctx = g1.ctx
    if g1.is_zero() or g2.is_zero():
        raise ValidationError("factors must be nonzero", field="pair")
    n = int(g1.degree + g2.degree)
    source_target = target.to_level(source_ctx) if target is not None else None
    source = FactorPair(g1, g2, source_ctx.k, n, source_target)
    if not verify_factorization(source):
        raise ValidationError(f"({g1}) * ({g2}) does not factor the target", field="pair")
    if target_level < source_ctx.k:
        raise ValidationError(f"target level {target_level} is below the source level {source_ctx.k}", field="level")

    guard = guard or get_settings().factor_search_guard
    pairs = [source]
    for level in range(source_ctx.k, target_level):
        up = RingContext(source_ctx.p, level + 1, source_ctx.s)
        goal = target.to_level(up) if target is not None else SkewPoly.x_power_minus_one(up, n)
        pairs = [lifted for pair in pairs for lifted in _lift_one_level(pair, goal, guard)]
        logger.debug("pairs_lifted", level=level + 1, pairs=len(pairs))
    return pairs


def reduce_pair(pair: FactorPair) -> FactorPair:
    """Drop the top u-layer of both factors."""
    if pair.level < 2:
        raise ValidationError("a level-1 pair has no layer to drop", field="level")
    level = pair.level - 1
    target = pair.target.truncate(level) if pair.target is not None else None
    return FactorPair(pair.f1.truncate(level), pair.f2.truncate(level), level, pair.n, target)


# Table 1 and the linear-factor census


def _require_table1_ring(ctx: RingContext) -> None:
    if (ctx.p, ctx.k, ctx.s) != TABLE1_RING:
        raise ValidationError(f"the table is defined over p=5, k=3, s=4, got {ctx}", field="ctx")


def table1_pair(ctx: RingContext, row: int, v: int) -> FactorPair:
    """Quadratic pair of a table row at parameter v, over R_2."""
    if row not in TABLE1_FAMILIES:
        raise ValidationError(f"row must be one of {sorted(TABLE1_FAMILIES)}, got {row}", field="row")
    level_ctx = ctx.at_level(FACTOR_LEVEL)

    def quadratic(terms) -> SkewPoly:
        (lead, lead_sign), (constant, constant_sign) = terms
        return SkewPoly.from_coeffs(level_ctx, [[constant, constant_sign * v], 0, [lead, lead_sign * v]])

    first, second = TABLE1_FAMILIES[row]
    return FactorPair(quadratic(first), quadratic(second), FACTOR_LEVEL, TABLE1_LENGTH)


def census_pair(ctx: RingContext, family: int, t: int, s: int) -> FactorPair:
    """Linear pair of a census family with x^2 + 1 as target, over R_2."""
    level_ctx = ctx.at_level(FACTOR_LEVEL)

    def linear(terms) -> SkewPoly:
        (lead, lead_t, _), (constant, _, constant_s) = terms
        return SkewPoly.from_coeffs(level_ctx, [[constant, constant_s * s], [lead, lead_t * t]])

    first, second = CENSUS_FAMILIES[family]
    target = SkewPoly.from_coeffs(level_ctx, [1, 0, 1])
    return FactorPair(linear(first), linear(second), FACTOR_LEVEL, 2, target)


def torsion_code_summary(
    ctx: RingContext, factor: SkewPoly, n: int, guard: Optional[int] = None, with_distance: bool = True
) -> CodeSummary:
    """Stats of <u^(k-j) * factor> over R_k for a factor over R_j."""
    generator = factor.to_level(ctx).shift_up(ctx.k - factor.ctx.k)
    code = code_from_generators(ctx, n, [generator])
    form = classify(code)
    distance = min_distance(code, guard) if with_distance else None
    return CodeSummary(generator, form.case.value, rank(form), code.size, distance)


def _distinct(polys: Iterable[SkewPoly]) -> Tuple[SkewPoly, ...]:
    return tuple(dict.fromkeys(polys))


def census_report(
    ctx: RingContext, guard: Optional[int] = None, enumeration_sample: Optional[int] = None
) -> CensusReport:
    """
    Linear factors of x^2 + 1 over R_2 from the four lift families and their codes.

    Codes <u * l> live in R_k with length 4; distinct codes are counted by
    their canonical span basis. Code sizes are checked by enumeration for
    ``enumeration_sample`` distinct codes (all of them by default).
    """
    _require_table1_ring(ctx)
    pairs = [
        census_pair(ctx, family, t, s) for family in sorted(CENSUS_FAMILIES) for t in range(ctx.p) for s in range(ctx.p)
    ]
    verified = sum(1 for pair in pairs if verify_factorization(pair))
    factors = _distinct(f for pair in pairs for f in (pair.f1, pair.f2))

    target = SkewPoly.from_coeffs(ctx.at_level(FACTOR_LEVEL), [1, 0, 1])
    found = enumerate_factor_pairs(ctx, 2, 1, level=FACTOR_LEVEL, target=target)
    enumerated = set(f for pair in found for f in (pair.f1, pair.f2))

    codes = {}
    for factor in factors:
        generator = factor.to_level(ctx).shift_up(ctx.k - FACTOR_LEVEL)
        code = code_from_generators(ctx, TABLE1_LENGTH, [generator])
        codes.setdefault(code.basis.key, code)

    summaries = []
    checked, agrees = 0, True
    limit = len(codes) if enumeration_sample is None else enumeration_sample
    for index, code in enumerate(codes.values()):
        form = classify(code)
        summaries.append(CodeSummary(code.generators[0], form.case.value, rank(form), code.size))
        if index < limit:
            enumerated_size = sum(len(block) for block in code.basis.iter_vectors(guard))
            agrees = agrees and enumerated_size == code.size
            checked += 1

    report = CensusReport(
        family_pairs=len(pairs),
        verified_pairs=verified,
        distinct_factors=len(factors),
        enumerated_factors=len(enumerated),
        matches_enumeration=enumerated == set(factors),
        distinct_generators=len(_distinct(f.to_level(ctx).shift_up(ctx.k - FACTOR_LEVEL) for f in factors)),
        distinct_codes=len(codes),
        ranks=tuple(sorted({s.rank for s in summaries})),
        cardinalities=tuple(sorted({s.cardinality for s in summaries})),
        enumeration_checked=checked,
        enumeration_agrees=agrees,
        codes=tuple(summaries),
    )
    logger.info("census_completed", factors=report.distinct_factors, codes=report.distinct_codes)
    return report


def table1_report(
    ctx: RingContext, guard: Optional[int] = None, with_distance: bool = True, with_census: bool = True
) -> Table1Report:
    """
    The four principally generated families of length 4 over R_3.

    Each row lists the distinct factors of its family over v in F_5, checks
    every pair multiplies to x^4 - 1 in R_2, and reports rank, size and
    distance of <u * f> for every factor.
    """
    _require_table1_ring(ctx)
    rows = []
    stats: Dict[Tuple, CodeSummary] = {}
    with PerformanceMonitor("table1_report"):
        for row in sorted(TABLE1_FAMILIES):
            parameters = tuple(range(ctx.p))
            pairs = tuple(table1_pair(ctx, row, v) for v in parameters)
            factors = _distinct(f for pair in pairs for f in (pair.f1, pair.f2))
            summaries = []
            for factor in factors:
                key = tuple(map(tuple, factor.to_rows()))
                if key not in stats:
                    stats[key] = torsion_code_summary(ctx, factor, TABLE1_LENGTH, guard, with_distance)
                summaries.append(stats[key])
            rows.append(
                Table1Row(
                    row=row,
                    parameters=parameters,
                    pairs=pairs,
                    factors=factors,
                    verified=all(verify_factorization(pair) for pair in pairs),
                    codes=tuple(summaries),
                )
            )
        census = census_report(ctx, guard) if with_census else None
    return Table1Report(rows=tuple(rows), census=census)
