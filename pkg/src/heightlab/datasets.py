"""Embedded datasets: published tables, curve models, polynomials and field elements.

Every dataset is a JSON file under heightlab/data.  Elements of a quadratic
field Q(sqrt D) are stored as {"coords": [a, b], "den": d} meaning (a + b w)/d
with w the generator of quadratic_field(D).  Hecke eigenvalues are pairs
[c0, c1] = c0 + c1 e in Z[e], e = (1 + sqrt 5)/2 or e = sqrt 2.  Polynomials
list coefficients from the constant term up.  Missing table entries are null.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

DATASET_NAMES = ("table1", "frobenius", "curves", "polynomials", "table5", "elements", "fields")


class UnknownDataset(KeyError):
    def __init__(self, name):
        super().__init__(f"unknown dataset {name!r}; available: {', '.join(DATASET_NAMES)}")
        self.name = name


def _read_text(name):
    return resources.files("heightlab").joinpath("data", name + ".json").read_text()


@lru_cache(maxsize=None)
def _load_cached(name):
    return _read_text(name)


def load_dataset(name):
    """Parsed JSON of a named dataset (a fresh copy on every call)."""
    if name not in DATASET_NAMES:
        raise UnknownDataset(name)
    return json.loads(_load_cached(name))


def dump_dataset(obj):
    """Canonical JSON text for a dataset object; loads(dump(x)) == x."""
    return json.dumps(obj, indent=1, sort_keys=True)


# element codec

def decode_element(F, obj):
    coords = obj["coords"]
    den = int(obj.get("den", 1))
    if den <= 0:
        raise ValueError("denominator must be positive")
    if len(coords) != F.degree:
        raise ValueError(f"expected {F.degree} coordinates, got {len(coords)}")
    return F.element([Fraction(c) for c in coords], den)


def encode_element(x):
    """{"coords", "den"} with integer numerators over the least common denominator."""
    return {"coords": [int(c) for c in x.num], "den": int(x.den)}


def decode_poly(F, coeffs):
    return [decode_element(F, c) for c in coeffs]


# typed views

@dataclass(frozen=True)
class Table1Entry:
    D: int
    Dprime: int
    marked: bool

    def __str__(self):
        return f"{self.Dprime}^(2)" if self.marked else str(self.Dprime)


def table1_entries():
    out = []
    for row in load_dataset("table1")["rows"]:
        for e in row["entries"]:
            out.append(Table1Entry(row["D"], e["Dprime"], e["marked"]))
    return out


def table1_lines():
    """One line per discriminant, e.g. '353 : 5^(2)'."""
    lines = []
    for row in load_dataset("table1")["rows"]:
        ents = [str(Table1Entry(row["D"], e["Dprime"], e["marked"])) for e in row["entries"]]
        lines.append(f"{row['D']} : {', '.join(ents)}")
    return lines


def exceptional_discriminants():
    return sorted({e.D for e in table1_entries() if e.marked})


def frobenius_table(D):
    tables = load_dataset("frobenius")["tables"]
    if str(D) not in tables:
        raise KeyError(f"no Frobenius table for D = {D}; available: {', '.join(tables)}")
    return tables[str(D)]


def genus_two_model(D):
    from .g2lab.curves import GenusTwoModel
    from .numfield import quadratic_field

    rec = load_dataset("curves")["genus_two"][str(D)]
    F = quadratic_field(rec["D"])
    return GenusTwoModel(decode_poly(F, rec["P"]), decode_poly(F, rec["Q"]), F)


def published_curve_discriminant(D):
    return load_dataset("curves")["genus_two"][str(D)]["published_disc"]


def elliptic_model(name):
    from .g2lab.curves import EllipticModel
    from .numfield import quadratic_field

    rec = load_dataset("curves")["elliptic"][name]
    F = quadratic_field(rec["D"])
    return EllipticModel(*decode_poly(F, rec["a"]))


def relative_poly(name):
    from .numfield import quadratic_field

    rec = load_dataset("polynomials")["relative"][name]
    F = quadratic_field(rec["D"])
    return F, decode_poly(F, rec["coeffs"])


def rational_poly(name):
    return list(load_dataset("polynomials")["rational"][name])


def table5_rows():
    return load_dataset("table5")["rows"]


def element(path, F):
    """Element at a '/'-separated path of the elements dataset, decoded in F."""
    obj = load_dataset("elements")
    for part in path.split("/"):
        obj = obj[part]
    return decode_element(F, obj)


@lru_cache(maxsize=None)
def _named_fields():
    return load_dataset("fields")["fields"]


def named_field(label):
    """Fields stored by name (e.g. 'K353', the sextic field of the D = 353 cubic); None if unknown."""
    from .numfield import NumberField, register_field

    rec = _named_fields().get(label)
    if rec is None:
        return None
    K = NumberField(rec["poly"], label)
    return register_field(K)


def relative_extension(label):
    """The RelativeExtension recorded for a named field."""
    from .g2lab.relative import RelativeExtension
    from .numfield import quadratic_field

    rec = _named_fields()[label]
    F = quadratic_field(rec["base_D"])
    return RelativeExtension(F, decode_poly(F, rec["relative"]), label)


# validation

def _walk_elements(obj, path=""):
    if isinstance(obj, dict):
        if "coords" in obj and "den" in obj:
            yield path, obj
            return
        for k, v in obj.items():
            yield from _walk_elements(v, f"{path}/{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _walk_elements(v, f"{path}/{i}")


def validate_dataset(name):
    """Problems found in a dataset (empty when every record parses in its field)."""
    from .numfield import quadratic_field

    obj = load_dataset(name)
    problems = []
    if json.loads(dump_dataset(obj)) != obj:
        problems.append("JSON round trip changed the data")
    if name in ("curves", "polynomials"):
        groups = list(obj.get("genus_two", {}).items()) + list(obj.get("elliptic", {}).items()) \
            + list(obj.get("relative", {}).items())
        for key, rec in groups:
            F = quadratic_field(rec["D"])
            for path, e in _walk_elements(rec):
                try:
                    decode_element(F, e)
                except (ValueError, TypeError) as exc:
                    problems.append(f"{key}{path}: {exc}")
    if name == "table1":
        marked = exceptional_discriminants()
        if marked != [353, 421, 1321, 1597, 1997]:
            problems.append(f"marked discriminants {marked}")
    if name == "frobenius":
        for D, t in obj["tables"].items():
            for row in t["rows"]:
                if len(row["prime"]) != 2 or len(row["a"]) != 2:
                    problems.append(f"{D}: malformed row {row}")
    return problems
