import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heightlab import datasets as ds
from heightlab.heights import height
from heightlab.numfield import quadratic_field
from heightlab.quadratic import fundamental_unit_quadratic, narrow_class_number_quadratic
from heightlab.units import log_vector, torsion_subgroup, unit_group, units_of_height_up_to
from heightlab.verify import unit_powers_oracle


def test_fundamental_units_small():
    F5 = quadratic_field(5)
    assert fundamental_unit_quadratic(5) == F5.gen  # (1 + sqrt 5)/2
    F2 = quadratic_field(2)
    assert fundamental_unit_quadratic(8) == F2.element([1, 1])  # 1 + sqrt 2


def test_fundamental_unit_1597():
    F = quadratic_field(1597)
    eps = fundamental_unit_quadratic(1597)
    assert eps in {F.element([49063993, 2518525]), -F.element([49063993, 2518525])} \
        or 1 / eps in {F.element([49063993, 2518525]), -F.element([49063993, 2518525])}
    assert abs(float(height(eps).approx(64)) - 100646511) < 0.5


def test_stored_units_match_continued_fraction():
    for D in (353, 421, 1597, 1997):
        F = quadratic_field(D)
        u = ds.element(f"units/{D}", F)
        assert u.norm() == -1
        assert u == fundamental_unit_quadratic(D)


def test_narrow_class_numbers():
    assert narrow_class_number_quadratic(5) == 1
    assert narrow_class_number_quadratic(353) == 1
    assert narrow_class_number_quadratic(12) == 2


def test_torsion():
    assert torsion_subgroup(quadratic_field(-1))[1] == 4
    assert torsion_subgroup(quadratic_field(-3))[1] == 6
    assert torsion_subgroup(quadratic_field(5))[1] == 2


def test_unit_group_sqrt5():
    U = unit_group(quadratic_field(5))
    assert U.rank == 1 and U.complete
    assert U.units[0] in {quadratic_field(5).gen, 1 / quadratic_field(5).gen,
                          -quadratic_field(5).gen, -1 / quadratic_field(5).gen}


def test_units_of_bounded_height():
    F5 = quadratic_field(5)
    U = unit_group(F5)
    e = F5.gen
    assert set(units_of_height_up_to(U, 2)) == {F5.one(), -F5.one(), e, -e, 1 / e, -1 / e}
    assert set(units_of_height_up_to(U, 1)) == {F5.one(), -F5.one()}
    Ui = unit_group(quadratic_field(-1))
    assert len(units_of_height_up_to(Ui, 1)) == 4


def test_units_sqrt2_bound_6():
    # H((1 + sqrt 2)^2) = 3 + 2 sqrt 2 = 5.83 <= 6, so squares are included as well
    F = quadratic_field(2)
    us = units_of_height_up_to(unit_group(F), 6)
    assert len(us) == 10
    assert F.element([3, 2]) in us


def test_sextic_unit_group_is_heuristic():
    K = ds.named_field("K353")
    U = unit_group(K)
    assert U.rank == 4
    assert not U.complete
    for u in U.units:
        assert abs(u.norm()) == 1


@pytest.mark.parametrize("D", [2, 5, 13, 353])
@given(st.integers(2, 10 ** 5))
def test_units_match_power_oracle(D, B):
    F = quadratic_field(D)
    U = unit_group(F)
    got = units_of_height_up_to(U, B)
    assert set(got) == set(unit_powers_oracle(F, B))
    for u in got:
        assert sum(x * x for x in log_vector(u)) <= 2 * math.log(B) ** 2 + 1e-9
