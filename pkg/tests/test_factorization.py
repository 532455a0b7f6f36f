"""
Tests for factorizations of x^n - 1, lifting and the tabulated families.
"""
import pytest

from src.models.skew_poly import SkewPoly
from src.services.factorization import (
    FactorPair,
    census_pair,
    census_report,
    enumerate_factor_pairs,
    lift_from_base,
    reduce_pair,
    table1_pair,
    table1_report,
    torsion_code_summary,
    verify_factorization,
)
from src.utils.errors import GuardExceededError, ValidationError


def as_text(pairs):
    return {(str(pair.f1), str(pair.f2)) for pair in pairs}


class TestVerification:
    """Test cases for pair verification."""

    @pytest.mark.parametrize("row", [1, 2, 3, 4])
    def test_table_rows_factor_x4_minus_1(self, ctx534, row):
        """Every parameter of every row multiplies to x^4 - 1 over R_2."""
        for v in range(5):
            assert verify_factorization(table1_pair(ctx534, row, v))

    @pytest.mark.parametrize("family", [1, 2, 3, 4])
    def test_census_families_factor_x2_plus_1(self, ctx534, family):
        for t in range(5):
            for s in range(5):
                assert verify_factorization(census_pair(ctx534, family, t, s))

    def test_wrong_product(self, ctx534):
        """(x^2 + 1)^2 is not x^4 - 1."""
        pair = table1_pair(ctx534, 1, 0)
        assert not verify_factorization(FactorPair(pair.f1, pair.f1, pair.level, pair.n))

    def test_wrong_level(self, ctx534):
        pair = table1_pair(ctx534, 1, 0)
        assert not verify_factorization(FactorPair(pair.f1, pair.f2, 3, pair.n))

    def test_unknown_row(self, ctx534):
        with pytest.raises(ValidationError):
            table1_pair(ctx534, 5, 0)


class TestEnumeration:
    """Test cases for the exhaustive factor search."""

    def test_linear_factors_over_base_field(self, ctx534):
        """x^4 - 1 splits over F_5: 16 unit-leading linear left factors."""
        pairs = enumerate_factor_pairs(ctx534, 4, 1, level=1)
        assert len(pairs) == 16
        assert all(verify_factorization(pair) for pair in pairs)

    def test_census_enumeration(self, ctx534):
        """x^2 + 1 over R_2 has 200 ordered linear factorizations."""
        target = SkewPoly.from_coeffs(ctx534.at_level(2), [1, 0, 1])
        pairs = enumerate_factor_pairs(ctx534, 2, 1, level=2, target=target)
        assert len(pairs) == 200
        family = as_text(census_pair(ctx534, f, t, s) for f in range(1, 5) for t in range(5) for s in range(5))
        assert family <= as_text(pairs)

    def test_parallel_search_agrees(self, ctx534):
        target = SkewPoly.from_coeffs(ctx534.at_level(2), [1, 0, 1])
        serial = enumerate_factor_pairs(ctx534, 2, 1, level=2, target=target, workers=1)
        parallel = enumerate_factor_pairs(ctx534, 2, 1, level=2, target=target, workers=2)
        assert as_text(serial) == as_text(parallel)

    def test_degree_out_of_range(self, ctx534):
        with pytest.raises(ValidationError):
            enumerate_factor_pairs(ctx534, 4, 5, level=1)
        with pytest.raises(ValidationError):
            enumerate_factor_pairs(ctx534, 4, -1, level=1)

    def test_target_must_be_unit_leading(self, ctx534):
        target = SkewPoly.from_coeffs(ctx534.at_level(2), [1, 0, [0, 1]])
        with pytest.raises(ValidationError):
            enumerate_factor_pairs(ctx534, 2, 1, level=2, target=target)

    def test_guard(self, ctx534):
        with pytest.raises(GuardExceededError) as excinfo:
            enumerate_factor_pairs(ctx534, 4, 2, level=2, guard=100)
        assert excinfo.value.limit == 100
        assert excinfo.value.exit_code == 4


class TestLifting:
    """Test cases for layer-by-layer lifting."""

    def test_lift_reaches_table_row(self, ctx534):
        """Lifting x^4 - 1 = (x^2 + 1)(x^2 - 1) to R_2 contains the first row."""
        base = ctx534.at_level(1)
        lifts = lift_from_base(SkewPoly.from_coeffs(base, [1, 0, 1]), SkewPoly.from_coeffs(base, [4, 0, 1]), 2)
        assert all(verify_factorization(pair) for pair in lifts)
        row = as_text(table1_pair(ctx534, 1, v) for v in range(5))
        assert row <= as_text(lifts)

    def test_same_level_returns_source(self, ctx534):
        pair = table1_pair(ctx534, 2, 3)
        assert lift_from_base(pair.f1, pair.f2, 2) == [pair]

    def test_unverified_source(self, ctx534):
        base = ctx534.at_level(1)
        with pytest.raises(ValidationError):
            lift_from_base(SkewPoly.from_coeffs(base, [1, 0, 1]), SkewPoly.from_coeffs(base, [1, 0, 1]), 2)

    def test_level_below_source(self, ctx534):
        pair = table1_pair(ctx534, 1, 2)
        with pytest.raises(ValidationError):
            lift_from_base(pair.f1, pair.f2, 1)

    def test_reduce_pair(self, ctx534):
        """Dropping the top layer of a verified pair keeps it verified."""
        reduced = reduce_pair(table1_pair(ctx534, 3, 4))
        assert reduced.level == 1
        assert verify_factorization(reduced)
        with pytest.raises(ValidationError):
            reduce_pair(reduced)


class TestReports:
    """Test cases for the tabulated families and their codes."""

    def test_torsion_code(self, ctx534):
        """<u(x^2 + 1)> over R_3 is Case I with 625 codewords and distance 2."""
        factor = SkewPoly.from_coeffs(ctx534.at_level(2), [1, 0, 1])
        summary = torsion_code_summary(ctx534, factor, 4)
        assert summary.generator == SkewPoly.from_coeffs(ctx534, [[0, 1], 0, [0, 1]])
        assert (summary.case, summary.rank, summary.cardinality, summary.min_distance) == ("I", 2, 625, 2)

    def test_table1(self, ctx534):
        report = table1_report(ctx534, with_census=False)
        assert [row.row for row in report.rows] == [1, 2, 3, 4]
        assert report.census is None
        for row in report.rows:
            assert row.verified
            assert len(row.factors) == 10
            assert {code.case for code in row.codes} == {"I"}
            assert {(code.rank, code.cardinality, code.min_distance) for code in row.codes} == {(2, 625, 2)}

    def test_table1_without_distance(self, ctx534):
        report = table1_report(ctx534, with_distance=False, with_census=False)
        assert all(code.min_distance is None for row in report.rows for code in row.codes)

    def test_census(self, ctx534):
        report = census_report(ctx534, enumeration_sample=2)
        assert (report.family_pairs, report.verified_pairs) == (100, 100)
        assert (report.distinct_factors, report.enumerated_factors) == (200, 200)
        assert report.matches_enumeration
        assert report.distinct_generators == 200
        assert report.distinct_codes == 10
        assert report.ranks == (3,)
        assert report.cardinalities == (15625,)
        assert report.enumeration_checked == 2
        assert report.enumeration_agrees

    def test_wrong_ring(self, ctx333):
        with pytest.raises(ValidationError):
            table1_report(ctx333)
        with pytest.raises(ValidationError):
            census_report(ctx333)
