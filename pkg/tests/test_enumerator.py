from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from heightlab.enumerator import brute_force_bounded_height, enumerate_bounded_height, enumerate_with_denominator
from heightlab.heights import height
from heightlab.ideals import Ideal, prime_ideals_above
from heightlab.numfield import quadratic_field, rationals


def _q(xs):
    return {Fraction(x.coords[0]) for x in xs}


def test_rationals_small_bounds():
    Q = rationals()
    assert _q(enumerate_bounded_height(Q, 1).elements) == {0, 1, -1}
    assert _q(enumerate_bounded_height(Q, 2).elements) == {0, 1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)}


def test_rationals_bound_10_count():
    # 0 plus +-a/b with gcd(a, b) = 1 and max(a, b) <= 10
    expected = 1 + 2 * sum(1 for a in range(1, 11) for b in range(1, 11) if gcd(a, b) == 1)
    assert expected == 127
    assert len(enumerate_bounded_height(rationals(), 10)) == expected


def test_fixed_denominator_three():
    Q = rationals()
    xs = enumerate_with_denominator(Q, Ideal.principal(Q.element(3)), 5)
    assert _q(xs) == {Fraction(s * a, 3) for s in (1, -1) for a in (1, 2, 4, 5)}


def test_fixed_denominator_one_bound_one():
    F = quadratic_field(-1)
    xs = enumerate_with_denominator(F, Ideal.unit(F), 1)
    assert set(xs) == {F.zero(), F.one(), -F.one(), F.gen, -F.gen}


def test_fixed_denominator_prime_above_two():
    F = quadratic_field(353)
    P = prime_ideals_above(F, 2)[0]
    got = enumerate_with_denominator(F, P, 4)
    from heightlab.ideals import numerator_denominator_ideals
    oracle = [x for x in brute_force_bounded_height(F, 4)
              if not x.is_zero() and numerator_denominator_ideals(x)[1] == P]
    assert set(got) == set(oracle)


def test_gaussian_and_golden_small():
    Fi = quadratic_field(-1)
    assert set(enumerate_bounded_height(Fi, 1).elements) == {Fi.zero(), Fi.one(), -Fi.one(), Fi.gen, -Fi.gen}
    F5 = quadratic_field(5)
    e = F5.gen
    got = set(enumerate_bounded_height(F5, Fraction(17, 10)).elements)
    assert got == {F5.zero(), F5.one(), -F5.one(), e, -e, 1 / e, -1 / e}


def test_sqrt5_bound_3_matches_oracle():
    F5 = quadratic_field(5)
    fast = enumerate_bounded_height(F5, 3)
    slow = brute_force_bounded_height(F5, 3, box=6)
    assert fast.as_set() == set(slow)
    assert len(fast) == 11
    assert fast.completeness == "complete"


def test_class_representatives_variant_agrees():
    F = quadratic_field(-5)
    a = enumerate_bounded_height(F, 6)
    b = enumerate_bounded_height(F, 6, variant="class-representatives")
    assert a.as_set() == b.as_set()


def test_bound_below_one_is_empty():
    assert len(enumerate_bounded_height(rationals(), Fraction(1, 2))) == 0


@settings(max_examples=15)
@given(st.sampled_from([-1, -3, 2, 5, 13]), st.integers(1, 6))
def test_enumeration_matches_brute_force(D, B):
    F = quadratic_field(D)
    fast = enumerate_bounded_height(F, B)
    assert fast.as_set() == set(brute_force_bounded_height(F, B))
    for x in fast.elements:
        assert height(x).compare(B) <= 0
