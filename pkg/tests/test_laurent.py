from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holomon.laurent import LaurentPoly, LaurentRational


def poly(nvars, terms):
    return LaurentPoly(nvars, terms)


class TestLaurentPoly:
    def test_zero_coefficients_dropped(self):
        p = poly(2, {(1, 0): 1, (0, 1): 0})
        assert (0, 1) not in p.terms
        assert len(p.terms) == 1

    def test_add_cancellation(self):
        p = poly(1, {(2,): 1})
        q = poly(1, {(2,): -1, (0,): 3})
        assert (p + q) == poly(1, {(0,): 3})

    def test_mul_half_exponents(self):
        # x^(1/2) * x^(1/2) = x
        h = LaurentPoly.variable(1, 0, half=True)
        assert h * h == LaurentPoly.variable(1, 0)

    def test_monomial_inverse(self):
        m = poly(2, {(1, -2): Fraction(3, 2)})
        assert m * m.monomial_inverse() == LaurentPoly.const(2, 1)
        with pytest.raises(ValueError):
            (m + 1).monomial_inverse()

    def test_pow_negative_monomial(self):
        x = LaurentPoly.variable(1, 0)
        assert x ** -2 == poly(1, {(-4,): 1})

    def test_normalize_sign(self):
        p = poly(1, {(2,): -1, (0,): -1})
        assert p.normalize_sign().all_coefficients_positive()

    def test_exponent_parities(self):
        p = poly(2, {(1, 2): 1, (3, 0): 5, (-1, 4): 2})
        assert p.exponent_parities() == (1, 0)
        bad = poly(2, {(1, 0): 1, (0, 0): 1})
        with pytest.raises(ValueError):
            bad.exponent_parities()

    def test_evaluate(self):
        p = poly(1, {(2,): 1, (-2,): 1})  # x + 1/x
        assert p.evaluate([2.0]) == pytest.approx(2.5)

    def test_sorted_terms_deterministic(self):
        p = poly(2, {(1, 0): 1, (0, 1): 2, (-1, 0): 3})
        assert [e for e, _ in p.sorted_terms()] == [(-1, 0), (0, 1), (1, 0)]


@st.composite
def small_polys(draw, nvars=2, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(-3, 3)) for _ in range(nvars))
        terms[exps] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    return LaurentPoly(nvars, terms)


class TestRingAxioms:
    @given(small_polys(), small_polys(), small_polys())
    @settings(max_examples=60, deadline=None)
    def test_distributive_and_associative(self, p, q, r):
        assert p * (q + r) == p * q + p * r
        assert (p * q) * r == p * (q * r)

    @given(small_polys(), small_polys())
    @settings(max_examples=60, deadline=None)
    def test_commutative(self, p, q):
        assert p * q == q * p


class TestLaurentRational:
    def test_cross_multiplication_equality(self):
        x = LaurentPoly.variable(1, 0)
        one = LaurentPoly.const(1, 1)
        # x/(1+x) == x^2/(x+x^2)
        a = LaurentRational(x, one + x)
        b = LaurentRational(x * x, x + x * x)
        assert a == b

    def test_arithmetic(self):
        x = LaurentPoly.variable(1, 0)
        one = LaurentPoly.const(1, 1)
        a = LaurentRational(one, one + x)
        b = LaurentRational(x, one + x)
        assert a + b == LaurentRational(one)
        assert (a * b).num == x

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            LaurentRational(LaurentPoly.const(1, 1), LaurentPoly.zero(1))

    def test_inverse(self):
        x = LaurentPoly.variable(1, 0)
        one = LaurentPoly.const(1, 1)
        r = LaurentRational(one + x, x)
        assert r * r.inverse() == LaurentRational(one)
