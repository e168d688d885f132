from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heightlab.numfield import NumberField, quadratic_field, rationals
from heightlab.orders import maximal_order_basis
from heightlab import datasets as ds

ints = st.integers(-40, 40)


def test_signature_and_discriminant_353():
    K = NumberField([-88, -1, 1])
    assert K.degree == 2
    assert K.signature == (2, 0)
    assert K.discriminant == 353


def test_gaussian_field():
    K = NumberField([1, 0, 1])
    assert K.signature == (0, 1)
    assert K.discriminant == -4


def test_norm_trace_of_w():
    w = quadratic_field(353).gen
    assert w.norm() == -88
    assert w.trace() == 1


def test_one_in_sextic():
    K = ds.named_field("K353")
    one = K.one()
    assert one.norm() == 1 and one.trace() == 6
    assert all(abs(complex(b.mid) - 1) < 1e-12 for b in one.embeddings())


def test_golden_ratio_embeddings():
    e = quadratic_field(5).gen
    vals = sorted(complex(b.mid).real for b in e.embeddings())
    assert vals == pytest.approx([-0.6180339887, 1.6180339887])
    assert e.norm() == -1


def test_maximal_order_sqrt5():
    basis, den = maximal_order_basis(NumberField([-5, 0, 1]))
    # rows over the power basis, divided by den: {1, (1 + x)/2}
    assert den == 2
    assert sorted(map(tuple, basis)) == [(1, 1), (2, 0)]


def test_power_basis_maximal_353():
    K = NumberField([-88, -1, 1])
    assert K.index == 1


def test_sextic_field_discriminant_support():
    from sympy import factorint
    K = ds.named_field("K353")
    assert set(factorint(abs(K.discriminant))) <= {2, 353}
    # four real places and one complex pair, computed from the defining polynomial
    assert K.signature == (4, 1)


def test_relative_minpoly_of_c_and_base_element():
    ext = ds.relative_extension("K353")
    F = ext.F
    g = ext.minpoly_relative(ext.c)
    assert g == ext.g
    assert ext.g == [F.element([10, -1]), F.zero(), -F.one(), F.one()]
    lin = ext.minpoly_relative(ext.w)
    assert lin == [-F.gen, F.one()]


@given(ints, ints, ints, ints)
def test_quadratic_field_axioms(a, b, c, d):
    F = quadratic_field(353)
    x, y = F.element([a, b]), F.element([c, d])
    assert (x + y) - y == x
    assert x * y == y * x
    if not y.is_zero():
        assert (x * y) / y == x
        assert (x / y).norm() == x.norm() / y.norm()
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()


@given(st.lists(ints, min_size=6, max_size=6), st.lists(ints, min_size=6, max_size=6))
def test_sextic_norm_multiplicative(u, v):
    K = ds.named_field("K353")
    x, y = K.element(u), K.element(v)
    assert (x * y).norm() == x.norm() * y.norm()
    if not x.is_zero():
        assert x * x.inverse() == K.one()


def test_rationals_field():
    Q = rationals()
    assert Q.degree == 1
    assert Q.element(Fraction(2, 3)) * 3 == Q.element(2)
