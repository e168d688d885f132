"""Points on the degree-5 Humbert surface and the unit-scaling parametrization."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass
class HumbertPoint:
    g: object
    h: object


def humbert5_z(g, h):
    """z = 2(6250h^2 - 4500g^2h - 1350gh - 108h - 972g^5 - 324g^4 - 27g^3)."""
    return 2 * (6250 * h * h - 4500 * g * g * h - 1350 * g * h - 108 * h
                - 972 * g ** 5 - 324 * g ** 4 - 27 * g ** 3)


def _rational_sqrt(q):
    q = Fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def sqrt_in_field(z):
    """A square root of z in its field (rationals or a quadratic field), or None.

    For quadratic fields: if s^2 = z then N(s) = +-sqrt N(z) and Tr(s)^2 = Tr(z) + 2 N(s),
    and s = (z + N(s))/Tr(s) when Tr(s) != 0; s is rational times sqrt of a rational otherwise.
    """
    if not hasattr(z, "K"):
        return _rational_sqrt(z)
    K = z.K
    if z.is_zero():
        return K.zero()
    if K.degree == 1:
        r = _rational_sqrt(z.coords[0])
        return None if r is None else K.element(r)
    if K.degree != 2:
        raise NotImplementedError("square test implemented for quadratic fields")
    nz = Fraction(z.norm())
    tz = Fraction(z.trace())
    m = _rational_sqrt(nz)
    if m is None:
        return None
    for ns in (m, -m):
        t2 = tz + 2 * ns
        t = _rational_sqrt(t2)
        if t is None:
            continue
        if t != 0:
            s = (z + K.element(ns)) / K.element(t)
            if s * s == z:
                return s
        else:
            # s = q * sqrt(d) with trace 0: s = q (2w - tr(w)) up to rational scaling
            root = 2 * K.gen - K.element(Fraction(K.gen.trace()))
            ratio = z / (root * root)
            if ratio.coords[1] == 0:
                q = _rational_sqrt(ratio.coords[0])
                if q is not None:
                    return K.element(q) * root
    return None


def is_square_in_field(z):
    return sqrt_in_field(z) is not None


def humbert5_evaluate(pt):
    """(z, z is a square in F).  Both the raw value and its squareness are reported."""
    z = humbert5_z(pt.g, pt.h)
    return z, is_square_in_field(z)


def scaling_parametrization(m, n, g1, h1, u, eps):
    """(g, h) = (eps^m g1 / (6 u^2), eps^n h1 / u^5)."""
    if (u == 0) if not hasattr(u, "is_zero") else u.is_zero():
        raise ValueError("scaling parameter u must be nonzero")
    g = eps ** m * g1 / (6 * u * u)
    h = eps ** n * h1 / u ** 5
    return HumbertPoint(g, h)
