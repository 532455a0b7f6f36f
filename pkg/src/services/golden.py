"""
Golden reports for the worked examples, the quadratic factor table and the
linear-factor census, and the fixture comparison behind ``selftest``.

Each fixture file holds an ``input`` block and an ``expected`` block. The
check named by the file recomputes its report from the input; every key
present in ``expected`` must match the report (extra report keys are
ignored, so a fixture may pin only the values it cares about).
"""
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import orjson

from src.models.ring import RingContext
from src.models.schemas import CheckResult, SelftestSummary, poly_from_input
from src.services.codec import (
    ErrorPattern,
    Message,
    apply_error,
    build_syndrome_table,
    correction_radius,
    decode,
    encode,
    layer_check_polys,
)
from src.services.factorization import census_report, table1_report
from src.services.skew_code import (
    CaseIIIForm,
    CodeCase,
    classify,
    code_from_generators,
    cofactor,
    generator_matrix,
    matrix_discrepancies,
    parity_check_display,
    rank,
    untwisted_generator_matrix,
    untwisted_parity_check_display,
)
from src.utils.errors import GuardExceededError, ParseError, SkewCodeError
from src.utils.logger import get_logger

logger = get_logger(__name__)

Report = Dict[str, Any]


def _context(data: Dict[str, Any]) -> RingContext:
    ctx = data["ctx"]
    return RingContext(int(ctx["p"]), int(ctx["k"]), int(ctx["s"]))


def _matrix_rows(matrix) -> List[List[List[int]]]:
    return [[c.to_list() for c in row] for row in matrix]


def _ascending(poly) -> List[int]:
    return [int(c) for c in poly.coeffs[::-1]]


def case3_example_report(data: Dict[str, Any], guard: Optional[int] = None) -> Report:
    """Classify, encode, corrupt and decode the worked Case III example."""
    ctx = _context(data)
    n = int(data["n"])
    code = code_from_generators(ctx, n, [poly_from_input(g, ctx) for g in data["generators"]])
    form = classify(code)
    if not isinstance(form, CaseIIIForm):
        return {"case": form.case.value, "r": form.r}

    message = Message(CodeCase.III, tuple(poly_from_input(f, ctx) for f in data["message"]))
    codeword = encode(form, message)
    received = apply_error(codeword, ErrorPattern(tuple(tuple(term) for term in data["error"])))
    table = build_syndrome_table(form, max_weight=1)
    result = decode(received, form, table)
    enumerated = sum(len(block) for block in code.basis.iter_vectors(guard))
    return {
        "case": form.case.value,
        "r": form.r,
        "t": form.t,
        "i": form.i,
        "rank": rank(form),
        "cardinality": code.size,
        "enumerated": enumerated,
        "checks": [_ascending(check) for check in layer_check_polys(form)],
        "codeword": codeword.to_rows(),
        "received": received.to_rows(),
        "syndromes": [_ascending_padded(value, n) for value in result.syndromes],
        "error_pattern": [list(term) for term in result.error.terms],
        "ambiguous": result.ambiguous,
        "correction_radius": correction_radius(form, 1),
        "message": [f.to_rows() for f in result.message.polys],
    }


def _ascending_padded(poly, n: int) -> List[int]:
    values = _ascending(poly)
    return values + [0] * (n - len(values))


def case2_matrices_report(data: Dict[str, Any], guard: Optional[int] = None) -> Report:
    """Generator and parity-check matrices of the worked Case II example."""
    ctx = _context(data)
    n = int(data["n"])
    code = code_from_generators(ctx, n, [poly_from_input(g, ctx) for g in data["generators"]])
    form = classify(code)
    report: Report = {"case": form.case.value, "r": form.r, "rank": rank(form), "cardinality": code.size}
    if form.case is not CodeCase.II:
        return report
    report.update(
        {
            "cofactor": cofactor(form).to_rows(),
            "G": _matrix_rows(generator_matrix(form)),
            "G_untwisted": _matrix_rows(untwisted_generator_matrix(form)),
            "H": _matrix_rows(parity_check_display(form)),
            "H_untwisted": _matrix_rows(untwisted_parity_check_display(form)),
            "discrepancies": [{"matrix": d.matrix, "row": d.row} for d in matrix_discrepancies(form)],
        }
    )
    return report


def table1_summary(data: Dict[str, Any], guard: Optional[int] = None) -> Report:
    """Per-row factor counts and code statistics of the quadratic families."""
    report = table1_report(_context(data), guard=guard, with_distance=True, with_census=False)
    return {
        "rows": [
            {
                "row": row.row,
                "distinct_factors": len(row.factors),
                "verified": row.verified,
                "cases": sorted({code.case for code in row.codes}),
                "ranks": sorted({code.rank for code in row.codes}),
                "cardinalities": sorted({code.cardinality for code in row.codes}),
                "distances": sorted({code.min_distance for code in row.codes}),
            }
            for row in report.rows
        ]
    }


def census_summary(data: Dict[str, Any], guard: Optional[int] = None) -> Report:
    """Counts of the linear-factor census of x^2 + 1."""
    census = census_report(_context(data), guard=guard)
    return {
        "family_pairs": census.family_pairs,
        "verified_pairs": census.verified_pairs,
        "distinct_factors": census.distinct_factors,
        "enumerated_factors": census.enumerated_factors,
        "matches_enumeration": census.matches_enumeration,
        "distinct_generators": census.distinct_generators,
        "distinct_codes": census.distinct_codes,
        "ranks": list(census.ranks),
        "cardinalities": list(census.cardinalities),
        "enumeration_agrees": census.enumeration_agrees,
    }


GOLDEN_CHECKS: Dict[str, Callable[[Dict[str, Any], Optional[int]], Report]] = {
    "case3_example": case3_example_report,
    "case2_matrices": case2_matrices_report,
    "table1": table1_summary,
    "census": census_summary,
}


def compare_expected(expected: Any, actual: Any, path: str = "$") -> List[str]:
    """Differences between expected and actual values, one line each."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path}: expected an object, got {actual!r}"]
        lines = []
        for key in sorted(expected):
            if key not in actual:
                lines.append(f"{path}.{key}: missing")
            else:
                lines.extend(compare_expected(expected[key], actual[key], f"{path}.{key}"))
        return lines
    if isinstance(expected, list):
        if not isinstance(actual, (list, tuple)):
            return [f"{path}: expected a list, got {actual!r}"]
        if len(expected) != len(actual):
            return [f"{path}: expected {len(expected)} items, got {len(actual)}"]
        lines = []
        for index, (want, got) in enumerate(zip(expected, actual)):
            lines.extend(compare_expected(want, got, f"{path}[{index}]"))
        return lines
    if expected != actual:
        return [f"{path}: expected {expected!r}, got {actual!r}"]
    return []


def load_fixture(path: Path) -> Dict[str, Any]:
    try:
        document = orjson.loads(Path(path).read_bytes())
    except (OSError, orjson.JSONDecodeError) as exc:
        raise ParseError(f"cannot read fixture {path}: {exc}", text=str(path)) from exc
    if not isinstance(document, dict) or "input" not in document or "expected" not in document:
        raise ParseError(f"fixture {path} needs 'input' and 'expected' blocks", text=str(path))
    return document


def run_check(path: Path, guard: Optional[int] = None) -> CheckResult:
    name = Path(path).stem
    check = GOLDEN_CHECKS.get(name)
    if check is None:
        return CheckResult(name=name, status="fail", detail=f"no check named {name!r}")
    try:
        fixture = load_fixture(path)
        actual = check(fixture["input"], guard)
    except GuardExceededError as exc:
        logger.info("golden_check_skipped", check=name, reason=exc.message)
        return CheckResult(name=name, status="skipped", detail=exc.message)
    except SkewCodeError as exc:
        logger.warning("golden_check_errored", check=name, error=exc.error_code, message=exc.message)
        return CheckResult(name=name, status="fail", detail=f"{exc.error_code}: {exc.message}")
    diff = compare_expected(fixture["expected"], actual)
    if diff:
        return CheckResult(name=name, status="fail", detail=f"{len(diff)} mismatch(es)", diff=diff)
    return CheckResult(name=name, status="pass")


def run_selftest(fixtures_dir: Path, guard: Optional[int] = None) -> SelftestSummary:
    """Run every ``*.json`` fixture in the directory."""
    paths = sorted(Path(fixtures_dir).glob("*.json"))
    if not paths:
        raise ParseError(f"no fixtures found in {fixtures_dir}", text=str(fixtures_dir))
    results = [run_check(path, guard) for path in paths]
    summary = SelftestSummary(
        passed=sum(r.status == "pass" for r in results),
        failed=sum(r.status == "fail" for r in results),
        skipped=sum(r.status == "skipped" for r in results),
        results=results,
    )
    logger.info("selftest_completed", passed=summary.passed, failed=summary.failed, skipped=summary.skipped)
    return summary


def freeze(document: Dict[str, Any], guard: Optional[int] = None, name: Optional[str] = None) -> Dict[str, Any]:
    """A fixture document with ``expected`` recomputed from its input."""
    check = GOLDEN_CHECKS[name or document["name"]]
    return {**document, "expected": check(document["input"], guard)}
