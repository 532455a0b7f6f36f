"""
Command handlers for the ``skewcode`` front end.

Handlers take a validated :class:`CliConfig` plus their own arguments and
return a pydantic report; :func:`emit` renders reports as JSON or text.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type, TypeVar

import orjson
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError

from src.config import get_fixtures_dir
from src.models.codeword import Codeword
from src.models.ring import RingContext, ctx_new
from src.models.schemas import (
    AnalysisReport,
    CensusModel,
    CodeDocument,
    CodeStatsModel,
    DecodeReport,
    DiscrepancyModel,
    EncodeReport,
    FactorReport,
    FactorRowModel,
    FormModel,
    MatrixReport,
    MessageDocument,
    PolyModel,
    RingContextModel,
    SelftestSummary,
    StatsModel,
    Table1Document,
    Table1RowModel,
    TorsionModel,
    poly_from_input,
    poly_rows,
)
from src.models.skew_poly import SkewPoly
from src.services.codec import Message, build_syndrome_table, decode, encode
from src.services.factorization import (
    TABLE1_RING,
    CensusReport,
    CodeSummary,
    FactorPair,
    census_report,
    enumerate_factor_pairs,
    table1_report,
    torsion_code_summary,
    verify_factorization,
)
from src.services.golden import run_selftest
from src.services.skew_code import (
    CaseIForm,
    CaseIIForm,
    CaseIIIForm,
    CodeCase,
    GeneratorForm,
    SkewCyclicCode,
    check_case3_constraints,
    classify,
    code_from_generators,
    cofactor,
    generator_matrix,
    matrix_discrepancies,
    min_distance,
    minimal_generating_polys,
    parity_check_display,
    rank,
)
from src.utils.errors import FixtureMismatchError, ParseError, ValidationError
from src.utils.logger import get_logger

logger = get_logger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


class CliConfig(BaseModel):
    """Global options shared by every subcommand."""

    p: Optional[int] = None
    k: Optional[int] = None
    s: Optional[int] = None
    n: Optional[int] = Field(default=None, ge=1)
    guard: Optional[int] = Field(default=None, ge=1)
    format: str = "json"
    descending: bool = False
    output: Optional[Path] = None

    def context(self) -> RingContext:
        missing = [name for name in ("p", "k", "s") if getattr(self, name) is None]
        if missing:
            raise ValidationError(f"missing ring parameter(s): {', '.join('--' + m for m in missing)}", field=missing[0])
        return ctx_new(self.p, self.k, self.s)

    def length(self) -> int:
        if self.n is None:
            raise ValidationError("missing code length: --n", field="n")
        return self.n


# Input documents


def read_json(path: Path) -> Any:
    try:
        return orjson.loads(Path(path).read_bytes())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}", text=str(path)) from exc
    except orjson.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}", text=str(path)) from exc


def load_document(path: Path, model: Type[ModelT]) -> ModelT:
    try:
        return model.model_validate(read_json(path))
    except PydanticValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{path}: {location}: {first['msg']}", text=str(path)) from exc


def load_code(path: Path, descending: bool = False) -> Tuple[CodeDocument, SkewCyclicCode]:
    document = load_document(path, CodeDocument)
    ctx = document.ctx.to_context()
    generators = [poly_from_input(g, ctx, descending) for g in document.generators]
    return document, code_from_generators(ctx, document.n, generators)


def parse_message(document: MessageDocument, ctx: RingContext, descending: bool = False) -> Message:
    try:
        case = CodeCase(document.case)
    except ValueError as exc:
        raise ValidationError(f"message case must be I, II or III, got {document.case!r}", field="case") from exc
    if not document.polys:
        raise ValidationError("a message needs at least one polynomial", field="polys")
    return Message(case, tuple(poly_from_input(f, ctx, descending) for f in document.polys))


def parse_received(text: str, ctx: RingContext, n: int, descending: bool = False) -> Codeword:
    """A received word from a JSON coefficient array or polynomial text."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            entries = orjson.loads(stripped)
        except orjson.JSONDecodeError as exc:
            raise ParseError(f"received word is not valid JSON: {exc}", text=text) from exc
        if not isinstance(entries, list) or len(entries) != n:
            raise ValidationError(f"received word must have {n} entries", field="received")
        return Codeword.from_poly(poly_from_input(entries, ctx, descending), n)
    return Codeword.from_poly(poly_from_input(stripped, ctx).mod_xn(n), n)


# Report builders


def _matrix_report(name: str, matrix, descending: bool = False) -> MatrixReport:
    rows = [[c.to_list() for c in row] for row in matrix]
    text = [[str(c) for c in row] for row in matrix]
    if descending:
        rows, text = [row[::-1] for row in rows], [row[::-1] for row in text]
    return MatrixReport(name=name, rows=rows, text=text)


def form_model(form: GeneratorForm) -> FormModel:
    model = FormModel(case=form.case.value, r=form.r)
    if isinstance(form, CaseIIForm):
        model.g = PolyModel.from_poly(form.g)
        model.monic_g = PolyModel.from_poly(form.monic_g)
    elif isinstance(form, CaseIForm):
        model.i = form.i
        model.a1 = PolyModel.from_poly(form.a)
    elif isinstance(form, CaseIIIForm):
        model.t, model.i = form.t, form.i
        model.g = PolyModel.from_poly(form.g)
        model.h = PolyModel.from_poly(form.h)
        model.a1 = PolyModel.from_poly(form.a)
        model.extended_torsion = form.extended_torsion
    if isinstance(form, (CaseIForm, CaseIIIForm)):
        model.extra_torsion = [TorsionModel(layer=layer, a=PolyModel.from_poly(a)) for layer, a in form.extra_torsion]
    return model


def _code_stats_model(summary: CodeSummary) -> CodeStatsModel:
    return CodeStatsModel(
        generator=PolyModel.from_poly(summary.generator),
        case=summary.case,
        rank=summary.rank,
        cardinality=summary.cardinality,
        min_distance=summary.min_distance,
    )


def _factor_row(family: int, parameters: Sequence[int], pair: FactorPair, stats: List[CodeStatsModel]) -> FactorRowModel:
    return FactorRowModel(
        family=family,
        parameters=list(parameters),
        f1=PolyModel.from_poly(pair.f1),
        f2=PolyModel.from_poly(pair.f2),
        verified=verify_factorization(pair),
        code_stats=stats,
    )


def census_model(census: CensusReport) -> CensusModel:
    return CensusModel(
        family_pairs=census.family_pairs,
        verified_pairs=census.verified_pairs,
        distinct_factors=census.distinct_factors,
        enumerated_factors=census.enumerated_factors,
        matches_enumeration=census.matches_enumeration,
        distinct_generators=census.distinct_generators,
        distinct_codes=census.distinct_codes,
        ranks=list(census.ranks),
        cardinalities=list(census.cardinalities),
        enumeration_checked=census.enumeration_checked,
        enumeration_agrees=census.enumeration_agrees,
    )


# Commands


def cmd_factor(
    config: CliConfig,
    d1: Optional[int] = None,
    level: Optional[int] = None,
    target: Optional[str] = None,
    table1: bool = False,
    census: bool = False,
    with_stats: bool = True,
    with_distance: bool = True,
    workers: Optional[int] = None,
) -> BaseModel:
    """
    Factor pairs of x^n - 1 (or ``target``) with per-code statistics.

    ``table1`` reproduces the quadratic family table over p=5, k=3, s=4
    (with the linear-factor census when ``census`` is also set); ``census``
    alone reports only the census.
    """
    ctx = config.context() if config.p is not None else RingContext(*TABLE1_RING)
    if table1:
        report = table1_report(ctx, config.guard, with_distance=with_distance, with_census=census)
        rows = []
        for row in report.rows:
            by_factor = {f: _code_stats_model(s) for f, s in zip(row.factors, row.codes)}
            pairs = [
                _factor_row(row.row, [v], pair, [by_factor[pair.f1], by_factor[pair.f2]])
                for v, pair in zip(row.parameters, row.pairs)
            ]
            rows.append(
                Table1RowModel(
                    row=row.row,
                    factors=[PolyModel.from_poly(f) for f in row.factors],
                    distinct_factors=len(row.factors),
                    verified=row.verified,
                    pairs=pairs,
                    codes=[_code_stats_model(s) for s in row.codes],
                )
            )
        return Table1Document(rows=rows, census=census_model(report.census) if report.census else None)
    if census:
        return census_model(census_report(ctx, config.guard))

    if d1 is None:
        raise ValidationError("factor needs --d1 (or --table1 / --census)", field="d1")
    level_ctx = ctx.at_level(level or ctx.k)
    goal = poly_from_input(target, level_ctx) if target is not None else None
    n = goal.degree if goal is not None else config.length()
    pairs = enumerate_factor_pairs(ctx, n, d1, level=level_ctx.k, target=goal, workers=workers)

    families: Dict[SkewPoly, int] = {}
    stats: Dict[SkewPoly, CodeStatsModel] = {}

    def code_stats(f: SkewPoly) -> CodeStatsModel:
        if f not in stats:
            stats[f] = _code_stats_model(torsion_code_summary(ctx, f, n, config.guard, with_distance))
        return stats[f]

    rows = []
    for pair in pairs:
        family = families.setdefault(pair.f2.monic(), len(families) + 1)
        row_stats = [code_stats(pair.f1), code_stats(pair.f2)] if with_stats else []
        rows.append(_factor_row(family, [], pair, row_stats))
    target_poly = goal if goal is not None else SkewPoly.x_power_minus_one(level_ctx, n)
    return FactorReport(
        ctx=RingContextModel.from_context(ctx),
        n=n,
        d1=d1,
        level=level_ctx.k,
        target=PolyModel.from_poly(target_poly),
        pairs=rows,
        distinct_f1=len({pair.f1 for pair in pairs}),
        distinct_f2=len({pair.f2 for pair in pairs}),
    )


def cmd_analyze(
    config: CliConfig,
    generators: Optional[Path] = None,
    gens: Optional[Sequence[str]] = None,
    with_distance: bool = True,
) -> AnalysisReport:
    """Classification, spanning set, matrices and statistics of a code."""
    if generators is not None:
        document, code = load_code(generators, config.descending)
        ctx = code.ctx
    elif gens:
        ctx, n = config.context(), config.length()
        code = code_from_generators(ctx, n, [poly_from_input(g, ctx) for g in gens])
        document = CodeDocument(ctx=RingContextModel.from_context(ctx), n=n, generators=list(gens))
    else:
        raise ValidationError("analyze needs --generators FILE or --gen POLY", field="generators")

    form = classify(code)
    distance = min_distance(code, config.guard) if with_distance else None
    document = document.model_copy(
        update={
            "form": form_model(form),
            "stats": StatsModel(rank=rank(form), cardinality=code.size, min_distance=distance),
        }
    )
    descending = config.descending
    report = AnalysisReport(
        code=document,
        gamma=[PolyModel.from_poly(f, descending) for f in minimal_generating_polys(form)],
        generator_matrix=_matrix_report("G", generator_matrix(form), descending),
        discrepancies=[
            DiscrepancyModel(
                matrix=d.matrix,
                row=d.row,
                computed=[c.to_list() for c in d.computed],
                untwisted=[c.to_list() for c in d.untwisted],
            )
            for d in matrix_discrepancies(form)
        ],
    )
    if isinstance(form, CaseIIForm):
        report.parity_check = _matrix_report("H", parity_check_display(form), descending)
        report.cofactor = PolyModel.from_poly(cofactor(form), descending)
    if isinstance(form, CaseIIIForm):
        report.case3_constraints = check_case3_constraints(form)
    logger.info("code_analyzed", case=form.case.value, r=form.r, size=code.size, distance=distance)
    return report


def cmd_encode(config: CliConfig, code_path: Path, message_path: Path) -> EncodeReport:
    _, code = load_code(code_path, config.descending)
    form = classify(code)
    message = parse_message(load_document(message_path, MessageDocument), code.ctx, config.descending)
    codeword = encode(form, message)
    return EncodeReport(codeword=codeword.to_rows(config.descending), text=str(codeword.to_poly()))


def cmd_decode(
    config: CliConfig, code_path: Path, received: str, max_weight: int = 1, strict: bool = False
) -> DecodeReport:
    _, code = load_code(code_path, config.descending)
    form = classify(code)
    word = parse_received(received, code.ctx, code.n, config.descending)
    table = build_syndrome_table(form, max_weight=max_weight, strict=strict)
    result = decode(word, form, table)
    n, descending = code.n, config.descending
    syndrome_rows = []
    for value in result.syndromes:
        row = [int(c) for c in value.coeffs[::-1]]
        row += [0] * (n - len(row))
        syndrome_rows.append(row[::-1] if descending else row)
    return DecodeReport(
        status=result.status,
        syndromes=syndrome_rows,
        error_pattern=[list(term) for term in result.error.terms],
        ambiguous=result.ambiguous,
        corrected=result.corrected.to_rows(descending),
        corrected_text=str(result.corrected.to_poly()),
        message=MessageDocument(
            case=result.message.case.value,
            polys=[poly_rows(f, descending=descending) for f in result.message.polys],
        ),
    )


def cmd_selftest(config: CliConfig, fixtures: Optional[Path] = None) -> SelftestSummary:
    return run_selftest(fixtures or get_fixtures_dir(), config.guard)


# Output


def _text_lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, dict):
                nested = _text_lines(item, indent + 1)
                lines.append(f"{pad}- {nested[0].strip()}")
                lines.extend(nested[1:])
            else:
                lines.append(f"{pad}- {_inline(item)}")
        return lines
    return [f"{pad}{_inline(value)}"]


def _is_flat(value: Any) -> bool:
    """Lists of numbers (or of number rows) print on one line."""
    if isinstance(value, dict):
        return False
    return all(isinstance(item, (int, str)) or (isinstance(item, list) and _is_flat(item)) for item in value)


def _inline(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "[" + ", ".join(_inline(item) for item in value) + "]"
    return str(value)


def render(report: BaseModel, fmt: str = "json") -> str:
    data = report.model_dump(mode="json", exclude_none=fmt == "text")
    if fmt == "text":
        return "\n".join(_text_lines(data)) + "\n"
    return orjson.dumps(data, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS).decode() + "\n"


def emit(report: BaseModel, config: CliConfig) -> None:
    output = render(report, config.format)
    if config.output is not None:
        Path(config.output).write_text(output, encoding="utf-8")
        logger.info("report_written", path=str(config.output))
    else:
        print(output, end="")


def execute(command: str, config: CliConfig, **options) -> None:
    """
    Run a subcommand and emit its report.

    Raises:
        FixtureMismatchError: If a selftest check failed (after the summary is emitted)
    """
    handlers = {
        "factor": cmd_factor,
        "analyze": cmd_analyze,
        "encode": cmd_encode,
        "decode": cmd_decode,
        "selftest": cmd_selftest,
    }
    report = handlers[command](config, **options)
    emit(report, config)
    if isinstance(report, SelftestSummary) and report.failed:
        diff = [f"{r.name}: {line}" for r in report.results if r.status == "fail" for line in (r.diff or [r.detail or ""])]
        raise FixtureMismatchError(f"{report.failed} golden check(s) failed", diff=diff)
