from fractions import Fraction

from hypothesis import assume, given, strategies as st

from heightlab import linalg as L
from heightlab import polys as P

coef = st.integers(-9, 9)
poly = st.lists(coef, min_size=1, max_size=6).map(lambda c: P.strip([Fraction(x) for x in c]))


@given(poly, poly)
def test_divmod_reconstructs(a, b):
    assume(P.degree(b) >= 0)
    q, r = P.divmod_poly(a, b)
    assert P.add(P.mul(q, b), r) == P.strip(a)
    assert P.degree(r) < P.degree(b)


@given(poly, poly)
def test_gcd_divides_both(a, b):
    assume(P.degree(a) >= 0 and P.degree(b) >= 0)
    g = P.gcd(a, b)
    assert not any(P.rem(a, g))
    assert not any(P.rem(b, g))


@given(poly, poly)
def test_discriminant_of_product(f, g):
    assume(P.degree(f) >= 1 and P.degree(g) >= 1)
    lhs = P.discriminant(P.mul(f, g))
    rhs = P.discriminant(f) * P.discriminant(g) * P.resultant(f, g) ** 2
    assert lhs == rhs


def test_discriminant_values():
    assert P.discriminant([-88, -1, 1]) == 353
    assert P.discriminant([1, 0, 0, 0, 0, 0, 1]) == -46656


def test_cycle_type_mod_p():
    # x^2 + 1 splits mod 5 and is inert mod 3
    assert P.fp_cycle_type([1, 0, 1], 5) == (1, 1)
    assert P.fp_cycle_type([1, 0, 1], 3) == (2,)


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=3, max_size=3))
def test_hnf_preserves_lattice(rows):
    d = L.det_int(rows)
    assume(d != 0)
    H = L.hnf(rows)
    assert len(H) == 3
    assert all(H[i][j] == 0 for i in range(3) for j in range(i))
    assert L.hnf_det(H) == abs(d)
    for r in rows:
        assert L.lattice_contains(H, r)


@given(st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lll_unimodular_and_short(rows):
    assume(L.det_int(rows) != 0)
    G = [[sum(a * b for a, b in zip(u, v)) for v in rows] for u in rows]
    U = L.lll_gram(G)
    assert abs(L.det_int(U)) == 1
    b1 = L.vec_mat(U[0], rows)
    # |b1|^2 <= 2^(n-1) lambda_1^2 <= 4 min |row|^2
    assert sum(x * x for x in b1) <= 4 * min(G[i][i] for i in range(3))
