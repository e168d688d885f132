import json

import pytest
from hypothesis import given, strategies as st

from heightlab import datasets as ds
from heightlab.numfield import quadratic_field


@pytest.mark.parametrize("name", ds.DATASET_NAMES)
def test_round_trip_and_validity(name):
    obj = ds.load_dataset(name)
    assert json.loads(ds.dump_dataset(obj)) == obj
    assert ds.validate_dataset(name) == []


def test_unknown_dataset_lists_names():
    with pytest.raises(ds.UnknownDataset) as err:
        ds.load_dataset("table9")
    assert "table1" in str(err.value)


def test_table1_shape():
    assert len(ds.load_dataset("table1")["rows"]) == 31
    assert len(ds.table1_entries()) == 41
    assert ds.exceptional_discriminants() == [353, 421, 1321, 1597, 1997]
    assert "353 : 5^(2)" in ds.table1_lines()


def test_frobenius_353_rows():
    t = ds.frobenius_table(353)
    assert sorted(r["Np"] for r in t["rows"]) == [2, 2, 9, 11, 11, 17, 17, 19, 19]
    with pytest.raises(KeyError):
        ds.frobenius_table(5)


def test_table5_grouping():
    rows = ds.table5_rows()
    assert len(rows) == 10
    assert len(rows[0]["polys"][0]) == 7
    groups = [r["gal"] for r in rows[1:]]
    assert groups.count(groups[0]) == 2 and len(set(groups)) == 2
    assert sum(1 for g in groups if g != groups[0]) == 7


def test_sextic_from_dataset():
    assert ds.rational_poly("h353") == [2, 0, -19, 19, 1, -2, 1]


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6), st.integers(1, 1000))
def test_element_codec_round_trip(a, b, d):
    F = quadratic_field(353)
    x = F.element([a, b], d)
    enc = ds.encode_element(x)
    assert ds.decode_element(F, json.loads(json.dumps(enc))) == x


def test_decode_rejects_bad_records():
    F = quadratic_field(5)
    with pytest.raises(ValueError):
        ds.decode_element(F, {"coords": [1, 2, 3], "den": 1})
    with pytest.raises(ValueError):
        ds.decode_element(F, {"coords": [1, 2], "den": 0})
