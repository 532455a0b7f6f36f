"""
Tests for skew polynomial arithmetic and division.
"""
import itertools

import pytest

from src.models.schemas import parse_poly
from src.models.skew_poly import (
    SkewPoly,
    base_poly,
    is_right_divisor,
    layers,
    mod_xn_minus_1,
    sp_add,
    sp_inverse_unit,
    sp_is_unit,
    sp_left_divide,
    sp_mul,
    sp_right_divide,
    u_commute,
)
from src.utils.errors import DivisionError, NotUnitError, RingMismatchError, ValidationError


class TestSkewMultiplication:
    """Test cases for the twisted product."""

    def test_x_twists_scalars(self, ctx333):
        """x * u = theta(u) x = 2u x."""
        u = ctx333.u_power(1)
        product = SkewPoly.x(ctx333) * SkewPoly.constant(u)
        assert product == SkewPoly.monomial(ctx333.element([0, 2, 0]), 1)

    def test_scalars_do_not_twist_on_the_left(self, ctx333):
        """u * x is just u x."""
        u = ctx333.u_power(1)
        assert SkewPoly.constant(u) * SkewPoly.x(ctx333) == SkewPoly.monomial(u, 1)

    def test_ring_is_noncommutative(self, ctx534):
        """x * u differs from u * x when theta is not the identity."""
        u = SkewPoly.constant(ctx534.u_power(1))
        x = SkewPoly.x(ctx534)
        assert x * u != u * x

    def test_identity_theta_is_commutative(self):
        """With s = 1 the product is the ordinary one."""
        from src.models.ring import RingContext

        ctx = RingContext(7, 2, 1)
        f = SkewPoly.from_coeffs(ctx, [[1, 2], [0, 3], 1])
        g = SkewPoly.from_coeffs(ctx, [[2, 1], 5])
        assert f * g == g * f

    def test_functional_forms_match_operators(self, ctx333):
        """sp_add and sp_mul agree with + and *, and the check factor times g is x^6 - 1."""
        g = parse_poly("x^2 - x + 1", ctx333)
        h = parse_poly("x^4 + x^3 - x - 1", ctx333)
        assert sp_mul(h, g) == h * g == SkewPoly.x_power_minus_one(ctx333, 6)
        assert sp_add(h, g) == h + g == parse_poly("x^4 + x^3 + x^2 - 2x", ctx333)

    def test_degree_of_zero(self, ctx333):
        """The zero polynomial has degree below every integer."""
        assert SkewPoly.zero(ctx333).degree < 0
        assert SkewPoly.zero(ctx333).is_zero()

    def test_trailing_zeros_trimmed(self, ctx333):
        """Structural equality ignores trailing zero coefficients."""
        assert SkewPoly.from_coeffs(ctx333, [1, 0, 0]) == SkewPoly.one(ctx333)

    def test_monic(self, ctx534):
        """monic() left-multiplies by the inverse of a unit lead."""
        f = parse_poly("(1+4u+u^2)x^2 + (4+u+4u^2)", ctx534)
        monic = f.monic()
        assert monic.lead == ctx534.one()
        assert monic.scale_left(f.lead) == f

    def test_monic_needs_unit_lead(self, ctx333):
        with pytest.raises(NotUnitError):
            parse_poly("ux + 1", ctx333).monic()

    def test_mixed_rings_rejected(self, ctx333, ctx534):
        with pytest.raises(RingMismatchError):
            SkewPoly.one(ctx333) + SkewPoly.one(ctx534)


class TestDivision:
    """Test cases for right and left division."""

    def test_right_division_identity(self, ctx333):
        """f = q*g + r with deg r < deg g."""
        f = SkewPoly.x_power_minus_one(ctx333, 6)
        g = parse_poly("x^4 + (1+u+u^2)x^2 - (u+u^2)x + (1+u+u^2)", ctx333)
        q, r = sp_right_divide(f, g)
        assert q * g + r == f
        assert r.degree < g.degree

    def test_left_division_identity(self, ctx333):
        """f = g*q + r with deg r < deg g."""
        f = SkewPoly.x_power_minus_one(ctx333, 6)
        g = parse_poly("(2+u)x^2 + ux + 1", ctx333)
        q, r = sp_left_divide(f, g)
        assert g * q + r == f
        assert r.degree < g.degree

    def test_cofactor_of_case2_generator(self, ctx534):
        """x^4 - 1 = ((1+u)x^2 + (1+u)) * g."""
        g = parse_poly("(1+4u+u^2)x^2 + (4+u+4u^2)", ctx534)
        q, r = SkewPoly.x_power_minus_one(ctx534, 4).right_divmod(g)
        assert r.is_zero()
        assert q.to_rows() == [[1, 1, 0], [0, 0, 0], [1, 1, 0]]
        assert is_right_divisor(g, SkewPoly.x_power_minus_one(ctx534, 4))

    def test_division_is_unique(self):
        """Exhaustively over R_2 (p=3): exactly one (q, r) satisfies f = q*g + r."""
        from src.models.ring import RingContext

        ctx = RingContext(3, 2, 2)
        g = SkewPoly.from_coeffs(ctx, [[1, 1], [2, 1]])
        f = SkewPoly.from_coeffs(ctx, [[0, 1], 2, [1, 2]])
        elements = list(ctx.elements())
        solutions = []
        for q0, q1 in itertools.product(elements, repeat=2):
            q = SkewPoly(ctx, (q0, q1))
            r = f - q * g
            if r.degree < g.degree:
                solutions.append(q)
        assert solutions == [f.right_divmod(g)[0]]

    def test_zero_divisor_rejected(self, ctx333):
        with pytest.raises(DivisionError):
            SkewPoly.one(ctx333).right_divmod(SkewPoly.zero(ctx333))

    def test_non_unit_lead_rejected(self, ctx333):
        with pytest.raises(NotUnitError):
            SkewPoly.x(ctx333, 3).left_divmod(parse_poly("ux + 1", ctx333))

    def test_mod_xn_folds_without_twist(self, ctx333):
        """x^e reduces to x^(e mod n); coefficients are not twisted."""
        f = parse_poly("ux^7 + 2x^6 + x", ctx333)
        assert mod_xn_minus_1(f, 6) == parse_poly("(1+u)x + 2", ctx333)

    def test_mod_xn_matches_right_division(self, ctx534):
        """mod_xn is the remainder of right division by x^n - 1."""
        f = parse_poly("(2+u)x^6 + ux^5 + 3x^4 + (1+u^2)x", ctx534)
        _, r = f.right_divmod(SkewPoly.x_power_minus_one(ctx534, 4))
        assert f.mod_xn(4) == r


class TestUnitsAndLayers:
    """Test cases for units, u-commutation and layer decomposition."""

    def test_u_commute(self, ctx333):
        """(x + 1) * u = u * (2x + 1)."""
        f = parse_poly("x + 1", ctx333)
        f1 = u_commute(f, 1)
        u = SkewPoly.constant(ctx333.u_power(1))
        assert f1 == parse_poly("2x + 1", ctx333)
        assert f * u == u * f1

    def test_u_commute_range(self, ctx333):
        with pytest.raises(ValidationError):
            u_commute(SkewPoly.x(ctx333), 3)

    def test_units_match_inverse_search(self):
        """Exhaustively over degree <= 2 on R_2 (p=3): units are exactly the two-sided invertible polynomials."""
        from src.models.ring import RingContext

        ctx = RingContext(3, 2, 2)
        one = SkewPoly.one(ctx)
        elements = list(ctx.elements())
        # the constant term of f*g is f_0*g_0
        constant_inverse = {a: b for a, b in itertools.product(elements, repeat=2) if a * b == ctx.one()}
        for coeffs in itertools.product(elements, repeat=3):
            f = SkewPoly(ctx, coeffs)
            invertible = False
            if coeffs[0] in constant_inverse:
                for tail in itertools.product(elements, repeat=2):
                    g = SkewPoly(ctx, (constant_inverse[coeffs[0]],) + tail)
                    if f * g == one and g * f == one:
                        invertible = True
                        break
            assert sp_is_unit(f) == invertible, str(f)

    @pytest.mark.parametrize(
        "p, k, s, degree, shifts",
        [(3, 2, 2, 4, (1,)), (3, 3, 2, 2, (1, 2))],
        ids=["p3k2-deg4", "p3k3-deg2"],
    )
    def test_u_commute_exhaustive(self, p, k, s, degree, shifts):
        """f * u^i = u^i * f_i for every polynomial up to the given degree."""
        from src.models.ring import RingContext

        ctx = RingContext(p, k, s)
        elements = list(ctx.elements())
        for i in shifts:
            u = SkewPoly.constant(ctx.u_power(i))
            for coeffs in itertools.product(elements, repeat=degree + 1):
                f = SkewPoly(ctx, coeffs)
                fi = u_commute(f, i)
                assert f * u == u * fi
                assert not any(any(fi.layer(layer)) for layer in range(k - i, k))

    def test_u_commute_on_monomials(self, ctx333):
        """Every monomial a x^j with j <= 6 over R_3."""
        for i in (1, 2):
            u = SkewPoly.constant(ctx333.u_power(i))
            for a in ctx333.elements():
                for j in range(7):
                    f = SkewPoly.monomial(a, j)
                    assert f * u == u * u_commute(f, i)

    def test_unit_polynomial_inverse(self, ctx333):
        """1 + ux is a unit; its inverse works on both sides."""
        f = parse_poly("ux + 1", ctx333)
        assert sp_is_unit(f)
        inverse = sp_inverse_unit(f)
        assert f * inverse == SkewPoly.one(ctx333)
        assert inverse * f == SkewPoly.one(ctx333)

    def test_non_units(self, ctx333):
        """x and 2u are not units."""
        assert not SkewPoly.x(ctx333).is_unit()
        assert not parse_poly("2u", ctx333).is_unit()
        with pytest.raises(NotUnitError):
            SkewPoly.x(ctx333).inverse()

    def test_layer_decomposition(self, ctx333):
        """f = t_0 + u t_1 + u^2 t_2 over F_p."""
        f = parse_poly("x^4 + (1+u+u^2)x^2 - (u+u^2)x + (1+u+u^2)", ctx333)
        decomposition = layers(f)
        GF = ctx333.base_field
        assert decomposition.layers[0] == base_poly(GF, [1, 0, 1, 0, 1])
        assert decomposition.layers[1] == base_poly(GF, [1, 2, 1])
        assert decomposition.reassemble() == f

    def test_shift_down_lands_in_lower_ring(self, ctx333):
        """u(x^2 - x + 1) = u * a with a over R_2."""
        f = parse_poly("u(x^2-x+1)", ctx333)
        a = f.shift_down(1)
        assert a.ctx.k == 2
        assert a.to_rows() == [[1, 0], [2, 0], [1, 0]]
        assert a.shift_up(1, ctx333) == f


class TestDisplay:
    """Test cases for the text form."""

    def test_codeword_display(self, ctx333):
        f = SkewPoly.from_rows(ctx333, [[0, 2, 1], [1, 2, 0], [0, 1, 0], [1, 2, 0], [0, 2, 1], [1, 1, 2]])
        assert str(f) == "(1+u+2u^2)x^5 + (2u+u^2)x^4 + (1+2u)x^3 + ux^2 + (1+2u)x + (2u+u^2)"

    def test_constant_display(self, ctx333):
        assert str(SkewPoly.from_rows(ctx333, [[1, 1, 0]])) == "1+u"
        assert str(SkewPoly.zero(ctx333)) == "0"

    def test_vector_padding(self, ctx333):
        f = parse_poly("x^2 + 1", ctx333)
        assert len(f.to_vector(6)) == 6
        with pytest.raises(ValidationError):
            f.to_vector(2)
