"""
Tests for skew cyclic code construction, classification and statistics.
"""
import pytest

from src.models.codeword import Codeword
from src.models.schemas import parse_poly
from src.models.skew_poly import SkewPoly
from src.services.skew_code import (
    CaseIForm,
    CaseIIForm,
    CaseIIIForm,
    CodeCase,
    cardinality,
    check_case3_constraints,
    classify,
    code_equal,
    code_from_generators,
    code_stats,
    cofactor,
    enumerate_codewords,
    gamma_is_minimal,
    generator_matrix,
    is_skew_cyclic_closed,
    matrix_discrepancies,
    message_space_size,
    min_distance,
    minimal_generating_set,
    parity_check_display,
    rank,
    regenerated_equals,
    tau,
    untwisted_generator_matrix,
)
from src.utils.errors import GuardExceededError, RingMismatchError, ValidationError


def rows_of(matrix):
    return [[c.to_list() for c in row] for row in matrix]


class TestConstruction:
    """Test cases for building and enumerating codes."""

    def test_generators_reduced_mod_xn(self, ctx333):
        code = code_from_generators(ctx333, 3, [parse_poly("x^4 + 1", ctx333)])
        assert code.generators[0] == parse_poly("x + 1", ctx333)

    def test_invalid_inputs(self, ctx333, ctx534):
        with pytest.raises(ValidationError):
            code_from_generators(ctx333, 0, [SkewPoly.one(ctx333)])
        with pytest.raises(ValidationError):
            code_from_generators(ctx333, 3, [])
        with pytest.raises(RingMismatchError):
            code_from_generators(ctx333, 3, [SkewPoly.one(ctx534)])

    def test_enumerated_code_is_skew_cyclic(self, small_case3_code):
        """Codeword sets are closed under tau, sums and u-multiples."""
        words = enumerate_codewords(small_case3_code)
        assert len(words) == small_case3_code.size == 243
        assert is_skew_cyclic_closed(words)

    def test_non_closed_set(self, ctx333):
        word = Codeword.from_poly(parse_poly("x", ctx333), 3)
        assert not is_skew_cyclic_closed({Codeword.zero(ctx333, 3), word})
        assert not is_skew_cyclic_closed(set())

    def test_tau_preserves_membership(self, case3_code, ctx333):
        word = Codeword.from_poly(case3_code.generators[0], 6)
        shifted = tau(ctx333, word)
        assert case3_code.contains(shifted)
        assert shifted.entries[0] == word.entries[-1].theta()

    def test_code_equality(self, ctx333):
        f = parse_poly("u(x^2-x+1)", ctx333)
        first = code_from_generators(ctx333, 6, [f])
        second = code_from_generators(ctx333, 6, [SkewPoly.x(ctx333) * f, f])
        assert code_equal(first, second)
        assert first == second

    def test_enumeration_guard(self, case3_code):
        with pytest.raises(GuardExceededError):
            enumerate_codewords(case3_code, guard=100)


class TestClassification:
    """Test cases for the three generator cases."""

    def test_case3_example(self, case3_form, ctx333):
        """r = 4, t = 2, i = 1 with the supplied generators kept."""
        assert isinstance(case3_form, CaseIIIForm)
        assert case3_form.case is CodeCase.III
        assert (case3_form.r, case3_form.t, case3_form.i) == (4, 2, 1)
        assert case3_form.h == parse_poly("x^4 + (1+u+u^2)x^2 - (u+u^2)x + (1+u+u^2)", ctx333)
        assert case3_form.a.to_rows() == [[1, 0], [2, 0], [1, 0]]
        assert not case3_form.extended_torsion

    def test_case3_layers_of_h(self, case3_form, ctx333):
        """h = g + u p_1 + u^2 p_2 with g = x^4 + x^2 + 1."""
        assert case3_form.g == parse_poly("x^4 + x^2 + 1", ctx333)
        assert case3_form.p_layer(1) == parse_poly("x^2 + 2x + 1", ctx333)

    def test_case2_example(self, case2_form, ctx534):
        assert isinstance(case2_form, CaseIIForm)
        assert case2_form.r == 2
        assert case2_form.g == parse_poly("(1+4u+u^2)x^2 + (4+u+4u^2)", ctx534)
        assert case2_form.monic_g.lead == ctx534.one()

    def test_case1(self, case1_code):
        form = classify(case1_code)
        assert isinstance(form, CaseIForm)
        assert (form.r, form.i) == (2, 1)
        assert form.a.ctx.k == 2

    def test_small_case3(self, small_case3_code):
        form = classify(small_case3_code)
        assert isinstance(form, CaseIIIForm)
        assert (form.r, form.t, form.i) == (2, 1, 1)

    def test_torsion_on_two_layers(self, two_layer_torsion_code, ctx333):
        """A second torsion generator u^2 joins u(x - 1) in the Case I chain."""
        form = classify(two_layer_torsion_code)
        assert isinstance(form, CaseIForm)
        assert (form.r, form.i) == (1, 1)
        assert form.a == parse_poly("x - 1", ctx333.at_level(2))
        assert [(layer, a.to_rows()) for layer, a in form.extra_torsion] == [(2, [[1]])]
        assert form.code() == two_layer_torsion_code
        assert rank(form) == 2
        assert cardinality(form) == two_layer_torsion_code.size == 27
        assert len(enumerate_codewords(two_layer_torsion_code)) == 27
        assert gamma_is_minimal(form)

    def test_full_code(self, ctx333):
        """<1> is the whole ambient space."""
        form = classify(code_from_generators(ctx333, 2, [SkewPoly.one(ctx333)]))
        assert isinstance(form, CaseIIForm)
        assert form.r == 0
        assert cardinality(form) == 27 ** 2

    def test_zero_code_rejected(self, ctx333):
        with pytest.raises(ValidationError):
            classify(code_from_generators(ctx333, 4, [SkewPoly.zero(ctx333)]))

    def test_forms_regenerate_their_codes(self, case3_code, case2_code, case1_code, small_case3_code):
        for code in (case3_code, case2_code, case1_code, small_case3_code):
            assert regenerated_equals(classify(code), code)

    def test_case3_constraints(self, case3_form):
        assert check_case3_constraints(case3_form)

    def test_constraints_need_case3(self, case2_form):
        with pytest.raises(ValidationError):
            check_case3_constraints(case2_form)


class TestSizes:
    """Test cases for rank, cardinality and the minimal generating set."""

    def test_case_formulas_match_span(self, case3_form, case2_form, case1_code, small_case3_code):
        for form in (case3_form, case2_form, classify(case1_code), classify(small_case3_code)):
            assert cardinality(form) == form.code().size
            assert message_space_size(form) == cardinality(form)

    def test_ranks(self, case3_form, case2_form, case1_code):
        assert rank(case3_form) == 4
        assert rank(case2_form) == 2
        assert rank(classify(case1_code)) == 4

    def test_gamma(self, case3_form):
        gamma = minimal_generating_set(case3_form)
        assert len(gamma) == rank(case3_form)
        assert gamma_is_minimal(case3_form)


class TestMatrices:
    """Test cases for G, H and the untwisted comparison rows."""

    def test_generator_matrix_applies_theta(self, case2_form):
        assert rows_of(generator_matrix(case2_form)) == [
            [[4, 1, 4], [0, 0, 0], [1, 4, 1], [0, 0, 0]],
            [[0, 0, 0], [4, 4, 4], [0, 0, 0], [1, 1, 1]],
        ]

    def test_untwisted_rows(self, case2_form):
        assert rows_of(untwisted_generator_matrix(case2_form))[1] == [[0, 0, 0], [4, 1, 4], [0, 0, 0], [1, 4, 1]]

    def test_parity_check(self, case2_form):
        assert cofactor(case2_form).to_rows() == [[1, 1, 0], [0, 0, 0], [1, 1, 0]]
        assert rows_of(parity_check_display(case2_form)) == [
            [[1, 1, 0], [0, 0, 0], [1, 1, 0], [0, 0, 0]],
            [[0, 0, 0], [1, 4, 0], [0, 0, 0], [1, 4, 0]],
        ]

    def test_discrepancies(self, case2_form):
        found = [(d.matrix, d.row) for d in matrix_discrepancies(case2_form)]
        assert found == [("G", 1), ("H", 1)]

    def test_cofactor_needs_case2(self, case3_form):
        with pytest.raises(ValidationError):
            cofactor(case3_form)


class TestDistance:
    """Test cases for minimum distance."""

    def test_case1_distance(self, case1_code):
        assert min_distance(case1_code) == 2

    def test_full_code_distance(self, ctx333):
        assert min_distance(code_from_generators(ctx333, 3, [SkewPoly.one(ctx333)])) == 1

    def test_zero_code(self, ctx333):
        with pytest.raises(ValidationError):
            min_distance(code_from_generators(ctx333, 3, [SkewPoly.zero(ctx333)]))

    def test_distance_guard(self, case3_code):
        with pytest.raises(GuardExceededError):
            min_distance(case3_code, guard=10)

    def test_code_stats(self, case1_code):
        stats = code_stats(case1_code)
        assert (stats.rank, stats.cardinality, stats.min_distance) == (4, 6561, 2)
        assert code_stats(case1_code, with_distance=False).min_distance is None
