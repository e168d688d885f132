"""Root-discriminant bounds for p-torsion fields and ramification support of polynomials."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def fontaine_bound(p, delta_f, prec=64):
    """delta_F * p^(1 + 1/(p-1)).

    Bounds the root discriminant of the field cut out by the p-torsion of an
    abelian variety over F with good reduction everywhere; the same bound holds
    for its Galois closure over Q.
    """
    p = int(p)
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    with mpmath.workprec(prec):
        d = _mpf(delta_f)
        if d <= 0:
            raise ValueError("root discriminant must be positive")
        return d * mpmath.mpf(p) ** (1 + mpmath.mpf(1) / (p - 1))


def parse_delta(text):
    """Parse 'sqrt:353', '2^(3/2)*sqrt:1997' or a plain decimal into an mpf."""
    text = text.strip()
    factor = mpmath.mpf(1)
    if "*" in text:
        head, text = text.split("*", 1)
        if not head.startswith("2^"):
            raise ValueError(f"cannot parse root discriminant {head!r}")
        factor = mpmath.mpf(2) ** _mpf(Fraction(head[2:].strip("()")))
    if text.startswith("sqrt:"):
        n = int(text[5:])
        if n <= 0:
            raise ValueError("sqrt argument must be positive")
        return factor * mpmath.sqrt(n)
    return factor * mpmath.mpf(text)


@dataclass(frozen=True)
class RootDiscriminant:
    """2^t * sqrt(D), the shape every root discriminant in the tables takes."""

    two_exponent: Fraction
    D: int
    context: str = ""

    def value(self, prec=64):
        with mpmath.workprec(prec):
            return mpmath.mpf(2) ** _mpf(self.two_exponent) * mpmath.sqrt(self.D)

    def __lt__(self, other):
        """Exact comparison of two values with the same D: compare the 2-exponents."""
        if self.D != other.D:
            return self.value(128) < other.value(128)
        return self.two_exponent < other.two_exponent


def table_root_discriminants():
    """Bounds and exact root discriminants quoted alongside the worked examples."""
    out = []
    for D in (353, 421, 1597, 1997):
        out.append(RootDiscriminant(Fraction(2), D, f"p = 2 bound over Q(sqrt {D})"))
    out.append(RootDiscriminant(Fraction(1), 353, "2-torsion closure, D = 353"))
    out.append(RootDiscriminant(Fraction(3, 2), 1997, "sqrt 2-torsion closure, D = 1997"))
    out.append(RootDiscriminant(Fraction(1), 1997, "sqrt 2-torsion field, D = 1997"))
    return out


@dataclass
class RamificationReport:
    poly: list
    disc: int
    primes: dict

    @property
    def support(self):
        return set(self.primes)

    def field_support(self):
        return {p for p, info in self.primes.items() if info["divides_field_disc"]}

    def index_only(self):
        return {p for p, info in self.primes.items() if not info["divides_field_disc"]}


def ramification_support(poly, field_check=True):
    """Primes dividing disc(poly), each flagged by whether it divides the field discriminant.

    A prime dividing only the index [O_K : Z[x]] is unramified in K and hence in
    its Galois closure.  The primes of the field discriminant are exactly those
    ramified in the splitting field.
    """
    from .. import polys as P
    from ..numfield import NumberField

    poly = [int(c) for c in poly]
    if not P.is_irreducible([Fraction(c) for c in poly]) and field_check:
        raise ValueError("polynomial must be irreducible for the field check")
    x = sympy.symbols("x")
    d = int(sympy.discriminant(sympy.Poly(list(reversed(poly)), x)))
    if d == 0:
        raise ValueError("polynomial is not squarefree")
    info = {}
    dK = None
    if field_check:
        K = NumberField(poly, "ramification")
        dK = int(K.discriminant)
    for p, e in sorted(sympy.factorint(abs(d)).items()):
        entry = {"disc_valuation": e}
        if dK is not None:
            entry["field_disc_valuation"] = sympy.multiplicity(p, dK)
            entry["divides_field_disc"] = dK % p == 0
        else:
            entry["divides_field_disc"] = True
        info[p] = entry
    return RamificationReport(poly, d, info)
