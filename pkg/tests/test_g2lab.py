from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from heightlab import datasets as ds
from heightlab import polys as P
from heightlab.g2lab.curves import EllipticModel, GenusTwoModel, SingularModel, igusa_clebsch
from heightlab.g2lab.hecke import HeckeEigenvalueRecord, point_count_from_eigenvalue, two_torsion_obstruction
from heightlab.g2lab.humbert import HumbertPoint, humbert5_evaluate, is_square_in_field, scaling_parametrization
from heightlab.g2lab.search import candidate_pair_search
from heightlab.g2lab.tower import rootdisc_tower_1997, tower_cases
from heightlab.numfield import quadratic_field, rationals

Q = rationals()


def _qp(coeffs):
    return [Q.element(c) for c in coeffs]


def test_singular_model_rejected():
    m = GenusTwoModel(_qp([0]), _qp([1, 0, 0, 1]), Q)
    with pytest.raises(SingularModel):
        m.discriminant()


def test_quintic_model():
    m = GenusTwoModel(_qp([0, -1, 0, 0, 0, 1]), _qp([0]), Q)
    f = m.sextic()
    assert P.degree(f) == 5
    assert m.igusa_clebsch().I10 != 0


def test_igusa_clebsch_x6_plus_1():
    ic = igusa_clebsch([1, 0, 0, 0, 0, 0, 1])
    assert (ic.I2, ic.I4, ic.I6, ic.I10) == (-240, 1620, -119880, -46656)
    assert ic.I10 == P.discriminant([1, 0, 0, 0, 0, 0, 1])


def test_igusa_clebsch_quintic():
    ic = igusa_clebsch([0, -1, 0, 0, 0, 1])
    # as a sextic with a root at infinity
    assert ic.I10 == P.discriminant([0, -1, 0, 0, 0, 1, 0], degree_as=6) == -256


sextic = st.lists(st.integers(-4, 4), min_size=7, max_size=7).filter(lambda c: c[6] != 0)


@given(sextic, st.integers(-3, 3).filter(lambda t: t != 0))
def test_invariant_weights(f, lam):
    ic = igusa_clebsch(f)
    g = [c * lam ** i for i, c in enumerate(f)]
    ic2 = igusa_clebsch(g)
    for name, deg in (("I2", 2), ("I4", 4), ("I6", 6), ("I10", 10)):
        assert getattr(ic2, name) == getattr(ic, name) * Fraction(lam) ** (3 * deg)


@given(sextic, st.integers(-3, 3))
def test_translation_invariance(f, t):
    g = [Fraction(c) for c in P.compose(f, [t, 1])]
    a, b = igusa_clebsch(f), igusa_clebsch(g)
    assert (a.I2, a.I4, a.I6, a.I10) == (b.I2, b.I4, b.I6, b.I10)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.lists(st.integers(-3, 3), min_size=7, max_size=7))
def test_i10_is_4096_disc(q, p):
    m = GenusTwoModel(_qp(p), _qp(q), Q)
    try:
        f = m.sextic()
    except SingularModel:
        return
    assume(P.degree(f) >= 5 and P.degree(P.gcd(f, P.deriv(f))) == 0)
    assert m.igusa_clebsch().I10 == 4096 * m.discriminant()


def test_elliptic_discriminants():
    assert EllipticModel(0, 0, 0, 0, 1).discriminant() == -432
    assert EllipticModel(0, -1, 1, 0, 0).discriminant() == -11


def test_elliptic_curves_1997_have_unit_discriminant():
    for name in ("E1", "E2", "E3"):
        d = ds.elliptic_model(name).discriminant()
        assert abs(d.norm()) == 1


def test_point_counts():
    assert point_count_from_eigenvalue(HeckeEigenvalueRecord((-10, 1), 2, (1, -1))) == 5
    assert point_count_from_eigenvalue(HeckeEigenvalueRecord((-10, -1), 5, (3, 0))) == 9
    assert point_count_from_eigenvalue(HeckeEigenvalueRecord((0, 0), 2, (0, 0))) == 9


@given(st.sampled_from([2, 3, 4, 5, 7, 9, 11]), st.integers(-6, 6), st.integers(-6, 6))
def test_point_count_is_product_over_embeddings(Np, c0, c1):
    try:
        rec = HeckeEigenvalueRecord((0, 0), Np, (c0, c1))
    except ValueError:
        return
    n = point_count_from_eigenvalue(rec)
    prod = 1.0
    for v in rec.conjugate_values():
        prod *= Np + 1 - v
    assert n == pytest.approx(prod, abs=1e-6)


def test_two_torsion_obstruction():
    assert two_torsion_obstruction([5]) is True
    assert two_torsion_obstruction([9]) is True
    assert two_torsion_obstruction([4, 8]) is False
    assert two_torsion_obstruction([]) is None


def test_humbert_trivial_point():
    F = quadratic_field(353)
    z, sq = humbert5_evaluate(HumbertPoint(F.zero(), F.zero()))
    assert z.is_zero() and sq


@pytest.mark.parametrize("D", [353, 1597])
def test_humbert_published_points_give_squares(D):
    F = quadratic_field(D)
    pt = HumbertPoint(ds.element(f"humbert/{D}/g", F), ds.element(f"humbert/{D}/h", F))
    z, sq = humbert5_evaluate(pt)
    assert not z.is_zero() and sq


def test_square_test():
    F = quadratic_field(5)
    x = F.element([3, 7], 2)
    assert is_square_in_field(x * x)
    assert not is_square_in_field(F.element(2))


def test_scaling_parametrization():
    F = quadratic_field(1597)
    g1, h1 = F.element([-2335, 114]), F.one()
    assert scaling_parametrization(0, 0, g1, h1, F.one(), F.one()) == HumbertPoint(g1 / 6, h1)
    assert scaling_parametrization(0, 0, g1, h1, -F.one(), F.one()) == HumbertPoint(g1 / 6, -h1)
    with pytest.raises(ValueError):
        scaling_parametrization(0, 0, g1, h1, F.zero(), F.one())


def test_tower_values():
    assert rootdisc_tower_1997(0, 1).below_threshold
    assert not rootdisc_tower_1997(0, 2).below_threshold
    assert rootdisc_tower_1997(3, 15).below_threshold
    assert f"{float(rootdisc_tower_1997(0, 0).delta):.4f}" == "89.3756"


def test_tower_case_list():
    below = set(tower_cases())
    expect = {(r, s) for r, smax in ((0, 1), (1, 3), (2, 7), (3, 15)) for s in range(smax + 1)}
    assert below == expect


def test_search_bound_one_is_empty():
    ext = ds.relative_extension("K353")
    res = candidate_pair_search(ext, B=1)
    assert res.candidates == []
