from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from heightlab.heights import height, height_norm_formula
from heightlab.ideals import numerator_denominator_ideals
from heightlab.numfield import quadratic_field, rationals

small = st.integers(-25, 25)
den = st.integers(1, 9)


def test_rational_heights():
    Q = rationals()
    assert height(Q.element(Fraction(2, 3))).equals(3)
    assert height(Q.element(Fraction(1, 2))).equals(2)
    assert height_norm_formula(Q.element(Fraction(1, 2))).equals(2)
    assert height(Q.zero()).equals(1)


def test_height_of_w_both_routes():
    w = quadratic_field(353).gen
    assert height(w).equals(88)
    assert height_norm_formula(w).equals(88)
    assert height(w).compare(88) == 0 and height(w).compare(Fraction(8799, 100)) == 1


def test_numerator_denominator_ideals():
    F = quadratic_field(353)
    a, b = numerator_denominator_ideals(1 / F.gen)
    assert a.is_one()
    assert b.norm() == 88
    a, b = numerator_denominator_ideals(F.gen)
    assert b.is_one()
    Q = rationals()
    a, b = numerator_denominator_ideals(Q.element(Fraction(2, 3)))
    assert (a.norm(), b.norm()) == (2, 3)


def test_ball_contains_value():
    w = quadratic_field(353).gen
    assert height(w).ball(128).contains(88)


@given(small, st.integers(1, 25))
def test_rational_height_is_max(a, b):
    q = Fraction(a, b)
    x = rationals().element(q)
    assert height(x).equals(max(abs(q.numerator), q.denominator))


def _elt(F, a, b, d):
    return F.element([a, b], d)


@pytest.mark.parametrize("D", [5, -3, 353])
@given(small, small, den, small, small, den)
def test_height_axioms_quadratic(D, a, b, d, c, e, f):
    F = quadratic_field(D)
    x, y = _elt(F, a, b, d), _elt(F, c, e, f)
    assume(not x.is_zero() and not y.is_zero())
    hx, hy = height(x), height(y)
    # two independent routes agree
    assert height_norm_formula(x).approx(64) == pytest.approx(float(hx.approx(64)), rel=1e-12)
    # inversion and sign invariance
    assert float(height(1 / x).approx(64)) == pytest.approx(float(hx.approx(64)), rel=1e-12)
    assert float(height(-x).approx(64)) == pytest.approx(float(hx.approx(64)), rel=1e-12)
    # submultiplicativity
    assert float(height(x * y).approx(64)) <= float(hx.approx(64)) * float(hy.approx(64)) * (1 + 1e-12)
    # |N(x)| <= H(x) and H(x) >= 1
    assert float(abs(x.norm())) <= float(hx.approx(64)) * (1 + 1e-12)
    assert hx.compare(1) >= 0
