"""Quadratic fields: fundamental units by continued fractions and narrow class numbers by form cycles."""
from __future__ import annotations

from math import gcd, isqrt

import sympy

from .numfield import quadratic_field


def is_fundamental_discriminant(D):
    D = int(D)
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(m):
    return all(e == 1 for e in sympy.factorint(abs(m)).values())


def squarefree_kernel(D):
    """The squarefree d with Q(sqrt D) = Q(sqrt d) for a fundamental discriminant D."""
    return D if D % 4 == 1 else D // 4


def field_of_discriminant(D):
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    return quadratic_field(squarefree_kernel(D))


def _cf_convergents(P, Q, d):
    """Convergents of (P + sqrt d)/Q, a reduced-form quadratic irrational with Q | d - P^2."""
    s = isqrt(d)
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    while True:
        if Q > 0:
            a = (P + s) // Q
        else:
            a = (P + s + 1) // Q
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        yield h0, k0
        P = a * Q - P
        Q = (d - P * P) // Q


def fundamental_unit_quadratic(D):
    """Fundamental unit of the real quadratic field of fundamental discriminant D.

    Returned as an element a + b*w of quadratic_field(d) with value > 1 under the
    embedding w -> the larger root.  The pair (a, b) is read off the first
    continued-fraction convergent a/b of -conj(w) for which a + b*w is a unit.
    """
    if D <= 0:
        raise ValueError("real quadratic fields only")
    K = field_of_discriminant(D)
    d = squarefree_kernel(D)
    w = K.gen
    # -conj(w) = (sqrt d - 1)/2 or sqrt d
    if d % 4 == 1:
        gen = _cf_convergents(-1, 2, d)
    else:
        gen = _cf_convergents(0, 1, d)
    for a, b in gen:
        if b < 1:
            continue
        x = a + b * w
        if abs(x.norm()) == 1:
            return x if float(x.embeddings_float()[0].real) > 1 else 1 / x
    raise AssertionError("continued fraction terminated without a unit")


def unit_norm_sign(D):
    return int(fundamental_unit_quadratic(D).norm())


def _reduced_forms(D):
    """Primitive reduced indefinite forms (a, b, c) of discriminant D."""
    s = isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        if b * b >= D:
            break
        ac = (b * b - D) // 4
        for a in range(1, abs(ac) + 1):
            if ac % a:
                continue
            for sa in (a, -a):
                c = ac // sa
                # reduced: sqrt D - b < 2|a| < sqrt D + b  (b < sqrt D by the loop)
                two_a = 2 * a
                if _lt_sqrt_minus(D, b, two_a) and _lt_sqrt_plus(D, b, two_a):
                    if gcd(gcd(sa, b), c) == 1:
                        out.append((sa, b, c))
    return sorted(set(out))


def _lt_sqrt_minus(D, b, t):
    """sqrt D - b < t for positive t, exactly."""
    # sqrt D < t + b
    return t + b > 0 and D < (t + b) ** 2


def _lt_sqrt_plus(D, b, t):
    """t < sqrt D + b exactly."""
    u = t - b
    return u < 0 or u * u < D


def _rho(form, D):
    """Reduction step: (a, b, c) -> (c, b', c') with b' = -b mod 2c and sqrt D - 2|c| < b' < sqrt D."""
    a, b, c = form
    m = 2 * abs(c)
    s = isqrt(D)
    bp = s - ((s + b) % m)
    cp = (bp * bp - D) // (4 * c)
    return (c, bp, cp)


def narrow_class_number_quadratic(D):
    """Number of cycles of reduced primitive forms of discriminant D (equals h+)."""
    if not is_fundamental_discriminant(D) or D < 0:
        raise ValueError(f"{D} is not a positive fundamental discriminant")
    forms = set(_reduced_forms(D))
    seen = set()
    cycles = 0
    for f in sorted(forms):
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = _rho(g, D)
            if g not in forms:
                raise ArithmeticError(f"reduction left the set of reduced forms at {g}")
    return cycles


def form_cycles(D):
    forms = sorted(set(_reduced_forms(D)))
    seen = set()
    out = []
    for f in forms:
        if f in seen:
            continue
        cyc = []
        g = f
        while g not in seen:
            seen.add(g)
            cyc.append(g)
            g = _rho(g, D)
        out.append(cyc)
    return out
