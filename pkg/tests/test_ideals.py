from hypothesis import given, strategies as st

from heightlab.ideals import (Ideal, ideals_of_norm_up_to, prime_ideals_above, principal_generator_search)
from heightlab.numfield import quadratic_field, rationals


def _norms(ideals):
    return sorted(int(I.norm()) for I in ideals)


def test_splitting():
    assert _norms(prime_ideals_above(quadratic_field(353), 2)) == [2, 2]
    assert _norms(prime_ideals_above(quadratic_field(5), 2)) == [4]
    assert _norms(prime_ideals_above(quadratic_field(421), 5)) == [5, 5]
    assert _norms(prime_ideals_above(quadratic_field(5), 5)) == [5]


def test_ideals_of_bounded_norm():
    assert _norms(ideals_of_norm_up_to(rationals(), 5)) == [1, 2, 3, 4, 5]
    assert _norms(ideals_of_norm_up_to(quadratic_field(5), 5)) == [1, 4, 5]
    assert _norms(ideals_of_norm_up_to(quadratic_field(353), 4)) == [1, 2, 2, 4, 4, 4]


def test_principal_generators():
    F = quadratic_field(353)
    gen = F.element([-10, 1])
    res = principal_generator_search(Ideal.principal(gen))
    assert res.generator is not None
    assert abs(res.generator.norm()) == abs(gen.norm())
    assert Ideal.principal(res.generator) == Ideal.principal(gen)

    F5 = quadratic_field(5)
    P = prime_ideals_above(F5, 5)[0]
    g = principal_generator_search(P).generator
    assert abs(g.norm()) == 5 and Ideal.principal(g) == P

    F = quadratic_field(1997)
    I = Ideal.from_generators(F, [F.element(7), F.element([22, 1])])
    res = principal_generator_search(I)
    assert res.status == "principal"
    assert Ideal.principal(res.generator) == I


def test_nonprincipal_in_class_number_two():
    # Q(sqrt -5): the prime above 2 is not principal
    F = quadratic_field(-5)
    P = prime_ideals_above(F, 2)[0]
    res = principal_generator_search(P)
    assert res.generator is None and res.status == "non-principal"


@given(st.integers(0, 5), st.integers(0, 5))
def test_norm_multiplicative(i, j):
    F = quadratic_field(353)
    L = ideals_of_norm_up_to(F, 12)
    I, J = L[i], L[j]
    assert (I * J).norm() == I.norm() * J.norm()
