"""Dense univariate polynomials as coefficient lists, lowest degree first.

Coefficients may be ints, Fractions or number field elements; anything
supporting ring arithmetic and comparison with 0 works.  Exact division
needs a field.  Factoring over Q and over F_p is delegated to sympy.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

import sympy
from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gt


def strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(strip(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return strip([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    n = max(len(p), len(q))
    return strip([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p):
    return [-c for c in p]


def scale(p, c):
    return strip([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return strip(out)


def power(p, e):
    out = [1]
    base = p
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p, q):
    """p(q(x))."""
    acc = []
    for c in reversed(p):
        acc = add(mul(acc, q), [c])
    return acc


def deriv(p):
    return strip([i * p[i] for i in range(1, len(p))])


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def divmod_poly(a, b):
    a, b = strip(a), strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        c = _div(r[-1], lb)
        k = len(r) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            r[i + k] = r[i + k] - c * bc
        r = strip(r)
    return strip(q), strip(r)


def rem(a, b):
    return divmod_poly(a, b)[1]


def monic(p):
    p = strip(p)
    if not p:
        return p
    lc = p[-1]
    return [_div(c, lc) for c in p]


def gcd(a, b):
    a, b = strip(a), strip(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = strip(a), strip(b)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    lc = r0[-1]
    inv = _div(1, lc)
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def resultant(a, b):
    a, b = strip(a), strip(b)
    if not a or not b:
        return 0
    sign_res = 1
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return sign_res * b[0] ** m
        r = rem(a, b)
        if not r:
            return 0
        k = len(r) - 1
        if (m * n) % 2:
            sign_res = -sign_res
        sign_res = sign_res * b[-1] ** (m - k)
        a, b = b, r


def discriminant(p, degree_as=None):
    """Discriminant of p; with ``degree_as`` treat p as a binary form of that degree.

    A binary form whose formal degree exceeds the true degree by one picks up
    the square of the leading coefficient; by two or more it vanishes.
    """
    p = strip(p)
    n = len(p) - 1
    if degree_as is not None and degree_as != n:
        if degree_as == n + 1:
            return p[-1] ** 2 * discriminant(p)
        return 0
    if n < 1:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return 1
    r = resultant(p, deriv(p))
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    return _div(s * r, p[-1])


def reverse(p, n=None):
    p = strip(p)
    if n is None:
        n = len(p) - 1
    q = list(p) + [0] * (n + 1 - len(p))
    return strip(q[::-1])


def power_sums(f, count):
    """Power sums p_1..p_count of the roots of f (Newton's identities)."""
    f = monic(f)
    n = len(f) - 1
    # e_k with f = x^n - e1 x^{n-1} + e2 x^{n-2} ...
    e = [1] + [(-1) ** k * f[n - k] for k in range(1, n + 1)]
    ps = [n]
    for m in range(1, count + 1):
        s = 0
        for i in range(1, min(m - 1, n) + 1):
            s += (-1) ** (i - 1) * e[i] * ps[m - i]
        if m <= n:
            s += (-1) ** (m - 1) * m * e[m]
        ps.append(s)
    return ps


def from_power_sums(ps, n):
    """Monic polynomial of degree n with root power sums ps[1..n]."""
    e = [Fraction(1)]
    for k in range(1, n + 1):
        s = 0
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * ps[i]
        e.append(Fraction(s) / k)
    return [(-1) ** (n - k) * e[n - k] for k in range(n)] + [Fraction(1)]


def compound(f, k):
    """Monic polynomial whose roots are the products of k-subsets of roots of f."""
    f = monic(f)
    n = len(f) - 1
    N = comb(n, k)
    ps = power_sums(f, k * N)
    # power sums of the k-subset products: e_k(r^m) from power sums p_{jm}
    out = [N]
    for m in range(1, N + 1):
        sub_ps = [k] + [ps[j * m] for j in range(1, k + 1)]
        ek = from_power_sums(sub_ps, k)[0] * (-1) ** k
        out.append(ek)
    return from_power_sums(out, N)


def cauchy_root_lower_bound(g):
    """Lower bound for |root| of g when g(0) != 0."""
    g = strip(g)
    r = reverse(g)
    lc = abs(r[-1])
    m = max(abs(c) for c in r[:-1])
    return Fraction(1) / (1 + Fraction(m) / lc) if isinstance(lc, (int, Fraction)) else 1 / (1 + m / lc)


def to_sympy(p, x=None):
    x = x or sympy.Symbol("x")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                       for c in reversed(strip(p))], x, domain="QQ")


def _from_sympy_coeffs(coeffs):
    out = []
    for c in reversed(coeffs):
        q = sympy.Rational(c)
        out.append(int(q) if q.q == 1 else Fraction(int(q.p), int(q.q)))
    return strip(out)


def factor_rational(p):
    """Factor over Q; returns (content, [(monic factor, multiplicity), ...])."""
    P = to_sympy(p)
    c, facs = P.factor_list()
    out = []
    for g, m in facs:
        g = g.monic()
        out.append((_from_sympy_coeffs(g.all_coeffs()), m))
    out.sort(key=lambda t: (len(t[0]), [Fraction(v) for v in t[0]]))
    return Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)), out


def is_irreducible(p):
    _, facs = factor_rational(p)
    return len(facs) == 1 and facs[0][1] == 1


def primitive_integer(p):
    """Scale a rational polynomial to a primitive integer polynomial with positive leading coefficient."""
    p = strip(p)
    den = 1
    for c in p:
        den = den * Fraction(c).denominator // _gcd_int(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = _gcd_int(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _gcd_int(a, b):
    from math import gcd as g
    return g(a, b)


# F_p helpers (coefficients lowest degree first, reduced mod p)

def mod_p(p, prime):
    return strip([int(c) % prime for c in p])


def fp_cycle_type(f, prime):
    """Degrees of the irreducible factors of a squarefree integer polynomial mod p, sorted descending.

    Returns None when f mod p is not squarefree or drops degree.
    """
    g = [int(c) % prime for c in reversed(f)]
    if g[0] == 0:
        return None
    g = gt.gf_monic(g, prime, ZZ)[1]
    if not gt.gf_sqf_p(g, prime, ZZ):
        return None
    parts = []
    for fac, d in gt.gf_ddf_zassenhaus(g, prime, ZZ):
        parts.extend([d] * ((len(fac) - 1) // d))
    return tuple(sorted(parts, reverse=True))


def fp_factor(f, prime):
    """Monic irreducible factors of f mod p with multiplicities (lowest degree first lists)."""
    g = [int(c) % prime for c in reversed(f)]
    lc, facs = gt.gf_factor(g, prime, ZZ)
    return [([int(c) for c in reversed(h)], m) for h, m in facs]
