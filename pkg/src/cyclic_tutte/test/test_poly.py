import pytest
from hypothesis import given
import hypothesis.strategies as st

from cyclic_tutte.errors import ValidationError
from cyclic_tutte.poly import (
    BivarPoly,
    UnivarPoly,
    bx,
    by,
    cross,
    delta_x,
    delta_y,
    format_poly,
    parse_poly,
    rgp_from_tutte,
    tutte_from_rgp,
)

M1_RGP = "x^3 + 6x^2 + 15x + 18 + 2xy + 15y + 6y^2 + y^3"

bivar = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
    st.integers(-30, 30),
    max_size=8,
).map(BivarPoly)


class TestUnivarPoly:

    def test_normalizes_zero_coefficients(self):
        assert UnivarPoly({0: 0, 2: 1}).coeffs == {2: 1}

    def test_arithmetic(self):
        p = UnivarPoly({1: 1, 0: 3})
        assert p + p == UnivarPoly({1: 2, 0: 6})
        assert p - p == UnivarPoly()
        assert p * p == UnivarPoly({2: 1, 1: 6, 0: 9})
        assert p.scale(2) == 2 * p

    def test_negative_degree_rejected(self):
        with pytest.raises(ValidationError):
            UnivarPoly({-1: 1})

    def test_min_coefficient(self):
        assert UnivarPoly({1: 4, 0: -2}).min_coefficient() == -2
        assert UnivarPoly().min_coefficient() == 0

    def test_format_in_y(self):
        assert UnivarPoly({0: 3, 1: 1}).format("y") == "3 + y"


class TestBinomialPolynomials:

    def test_bx_uniform_2_3(self):
        assert bx(3, 2) == UnivarPoly({2: 1, 1: 3})

    def test_by_uniform_2_3(self):
        assert by(3, 2) == UnivarPoly({0: 3, 1: 1})

    def test_base_case(self):
        assert bx(0, 0) == 1
        assert by(0, 0) == 1

    def test_bx_has_no_constant_term(self):
        assert bx(6, 3).coefficient(0) == 0

    def test_rank_must_be_below_size(self):
        with pytest.raises(ValidationError):
            bx(2, 2)
        with pytest.raises(ValidationError):
            by(3, 4)

    def test_bx_plus_by_counts_all_subsets(self):
        for n in range(1, 9):
            for r in range(n):
                assert bx(n, r).evaluate(1) + by(n, r).evaluate(1) == 2 ** n


class TestDeltaMaps:

    def test_docstring_example(self):
        f = BivarPoly({(1, 0): 6, (1, 1): 2})
        assert delta_x(f) == UnivarPoly({1: 6})
        assert delta_y(f) == UnivarPoly({0: 2})

    def test_delta_x_drops_constant(self):
        assert delta_x(BivarPoly.one()) == UnivarPoly()
        assert delta_y(BivarPoly.one()) == 1

    def test_cross(self):
        f = cross(UnivarPoly({1: 2}), UnivarPoly({0: 3, 1: 1}))
        assert f == BivarPoly({(1, 0): 6, (1, 1): 2})

    @given(bivar, bivar)
    def test_delta_maps_are_linear(self, a, b):
        assert delta_x(a + b) == delta_x(a) + delta_x(b)
        assert delta_y(a + b) == delta_y(a) + delta_y(b)


class TestRingAxioms:

    @given(bivar, bivar, bivar)
    def test_distributive(self, a, b, c):
        assert (a + b) * c == a * c + b * c

    @given(bivar, bivar)
    def test_commutative(self, a, b):
        assert a * b == b * a
        assert a + b == b + a

    @given(bivar)
    def test_additive_inverse(self, a):
        assert a - a == BivarPoly.zero()

    @given(bivar)
    def test_swap_is_involution(self, a):
        assert a.swap().swap() == a

    @given(bivar, st.integers(0, 3))
    def test_power_is_repeated_product(self, a, k):
        expected = BivarPoly.one()
        for _ in range(k):
            expected = expected * a
        assert a ** k == expected

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError, match="nonnegative exponent"):
            BivarPoly.x() ** -1


class TestTutteConversion:

    def test_uniform_2_3(self):
        s = BivarPoly({(2, 0): 1, (1, 0): 3, (0, 0): 3, (0, 1): 1})
        assert tutte_from_rgp(s) == BivarPoly({(2, 0): 1, (1, 0): 1, (0, 1): 1})

    @given(bivar)
    def test_maps_are_inverse(self, f):
        assert tutte_from_rgp(rgp_from_tutte(f)) == f
        assert rgp_from_tutte(tutte_from_rgp(f)) == f


class TestFormatting:

    def test_m1_order(self):
        s = parse_poly(M1_RGP)
        assert format_poly(s) == M1_RGP

    def test_uniform_2_3(self):
        s = BivarPoly({(2, 0): 1, (1, 0): 3, (0, 0): 3, (0, 1): 1})
        assert format_poly(s) == "x^2 + 3x + 3 + y"

    def test_negative_terms(self):
        assert format_poly(BivarPoly({(1, 0): 1, (0, 0): -2})) == "x - 2"
        assert format_poly(BivarPoly({(1, 0): -1})) == "-x"

    def test_zero(self):
        assert format_poly(BivarPoly.zero()) == "0"

    def test_parse_accepts_stars(self):
        assert parse_poly("2*x*y + 3*y^2") == BivarPoly({(1, 1): 2, (0, 2): 3})

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValidationError):
            parse_poly("x + z")
        with pytest.raises(ValidationError):
            parse_poly("")

    @given(bivar)
    def test_text_round_trip(self, f):
        assert parse_poly(format_poly(f)) == f
