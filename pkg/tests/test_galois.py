from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heightlab import datasets as ds
from heightlab.galois.fontaine import fontaine_bound, parse_delta, ramification_support
from heightlab.galois.frobenius import (frobenius_row, pgl2_orders_bruteforce, projective_frobenius_order,
                                         reduce_eigenvalue, reduce_integer)
from heightlab.galois.groups import (build_and_verify_sl2_f2eps, candidate_realizations, cycle_type_distribution,
                                     perm_from_cycles)
from heightlab.galois.scan import (chi_square_pvalue, compare_group_candidates, consistent_labels,
                                  cycle_type_scan)


def test_lemma_group():
    rep = build_and_verify_sl2_f2eps()
    assert all(c.passed for c in rep.checks)
    vals = {c.name: c.value for c in rep.checks}
    assert vals["order of <A, B>"] == 48
    assert vals["kernel order"] == 8 and vals["kernel exponent"] == 2
    assert vals["image of A"] == perm_from_cycles(6, [[1, 2, 4, 5]])


def test_realizations_have_stated_orders():
    for real in candidate_realizations():
        dist = cycle_type_distribution(real)
        assert sum(dist.values()) == 1


def test_reduce_eigenvalue():
    assert str(reduce_eigenvalue((-1, 2), "sqrt5", "2")) == "1"
    assert str(reduce_eigenvalue((1, -1), "sqrt5", "2")) == "alpha"
    assert str(reduce_eigenvalue((-2, -2), "sqrt5", "sqrt5")) == "2"
    with pytest.raises(ValueError):
        reduce_eigenvalue((1, 0), "sqrt2", "sqrt5")


def _order(a, field_name, mod, Np):
    r = reduce_eigenvalue(a, field_name, mod)
    return projective_frobenius_order(r, reduce_integer(Np, r.field))


def test_projective_orders_examples():
    assert _order((1, 0), "sqrt5", "2", 11) == 3
    assert _order((0, 0), "sqrt5", "2", 9) == 1
    # e^2 = e + 1 reduces to alpha^2
    assert _order((1, 1), "sqrt5", "2", 5) == 5


@given(st.sampled_from(["2", "sqrt5"]), st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 60))
def test_projective_order_matches_matrix_oracle(mod, c0, c1, Np):
    r = reduce_eigenvalue((c0, c1), "sqrt5", mod)
    q = reduce_integer(Np, r.field)
    if all(c == 0 for c in q.value):
        return
    assert projective_frobenius_order(r, q) == min(pgl2_orders_bruteforce(r, q))


def test_frobenius_tables_reproduced():
    for D in (353, 421, 1597, 1997):
        t = ds.frobenius_table(D)
        for row in t["rows"]:
            got = frobenius_row(row["Np"], row["prime"], row["a"], t["coeff_field"], t["moduli"])
            for m in t["moduli"]:
                if row.get(f"order_{m}") is not None:
                    assert got.orders[m] == row[f"order_{m}"]
                if row.get(f"residue_{m}") is not None:
                    assert str(got.residues[m]) == str(row[f"residue_{m}"])


def test_fontaine():
    assert fontaine_bound(2, 1) == pytest.approx(4)
    # printed values are truncated, not rounded
    assert int(fontaine_bound(2, parse_delta("sqrt:353")) * 10 ** 4) == 751531
    assert int(fontaine_bound(2, parse_delta("sqrt:1997")) * 10 ** 4) == 1787512


def test_ramification_support():
    assert set(ramification_support([1, 0, 1]).primes) == {2}
    h = ds.rational_poly("h353")
    assert ramification_support(h).field_support() <= {2, 353}
    rep = ramification_support(ds.rational_poly("h1997_sextic"))
    assert rep.field_support() <= {2, 1997}
    assert 7 in rep.index_only()


def test_scan_gaussian():
    h = cycle_type_scan([1, 0, 1], prime_bound=100)
    assert set(h.counts) == {(1, 1), (2,)}
    assert sum(h.counts.values()) == h.primes_used
    assert abs(h.counts[(1, 1)] - h.counts[(2,)]) <= 2


def test_chi_square_uniform():
    assert chi_square_pvalue({"a": 50, "b": 50}, {"a": Fraction(1, 2), "b": Fraction(1, 2)})[0] > 0.9
    assert chi_square_pvalue({"a": 90, "b": 10}, {"a": Fraction(1, 2), "b": Fraction(1, 2)})[0] < 1e-6


def test_h353_scan_short():
    hist = cycle_type_scan(ds.rational_poly("h353"), num_primes=1500)
    verdicts = {v.label: v for v in compare_group_candidates(hist)}
    assert verdicts["S3^2:Z2"].status == "consistent"
    assert verdicts["A5^2:Z2"].status == "eliminated"
    assert consistent_labels(verdicts.values()) == ["S3^2:Z2"]
