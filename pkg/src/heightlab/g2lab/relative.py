"""Relative extensions K = F[x]/(g) of a quadratic field F, realized as absolute fields.

K is built from the absolute polynomial h = g * conj(g) in Q[x], so c = x is a
root of g.  Writing g(x) = A(x) + w B(x) with A, B in Q[x], the image of w in
K is -A(c)/B(c).
"""
from __future__ import annotations

from fractions import Fraction

import sympy

from .. import polys as P
from ..numfield import NumberField


def _conj(x):
    """Galois conjugate of an element of a quadratic field."""
    F = x.K
    a, b = (Fraction(c) for c in x.coords)
    # w + conj(w) = -p1 for w^2 + p1 w + p0
    p1 = Fraction(F.poly[1])
    return F.element([a - b * p1, -b])


def conj_poly(g):
    return [_conj(c) for c in g]


def _split_ab(F, g):
    """g = A + w B with A, B rational polynomials."""
    A = [Fraction(F.element(c).coords[0]) if not isinstance(c, (int, Fraction)) else Fraction(c) for c in g]
    B = [Fraction(F.element(c).coords[1]) if not isinstance(c, (int, Fraction)) else Fraction(0) for c in g]
    return A, B


class RelativeExtension:
    """K = F[x]/(g) for F real quadratic and g monic irreducible over F.

    Attributes: F, g (list of F elements, constant term first), K (absolute
    field), c (image of x in K), w (image of F.gen in K).
    """

    def __init__(self, F, g, label=None):
        self.F = F
        self.g = [F.element(c) if not hasattr(c, "K") else c for c in g]
        if self.g[-1] != F.one():
            raise ValueError("relative polynomial must be monic")
        prod = P.mul(self.g, conj_poly(self.g))
        h = []
        for c in prod:
            a, b = c.coords
            if b != 0:
                raise ArithmeticError("g * conj(g) has irrational coefficients")
            h.append(Fraction(a))
        if any(x.denominator != 1 for x in h):
            raise ValueError("g must have integral coefficients")
        if not P.is_irreducible(h):
            raise ValueError("g * conj(g) is reducible: g is not a proper relative extension")
        self.h = [int(x) for x in h]
        self.K = NumberField(self.h, label or f"{F.label}[x]/g")
        self.c = self.K.gen
        A, B = _split_ab(F, self.g)
        Bc = P.evaluate([self.K.element(b) for b in B], self.c)
        if Bc.is_zero():
            raise ArithmeticError("cannot express w in K: B(c) = 0")
        self.w = -P.evaluate([self.K.element(a) for a in A], self.c) / Bc
        check = P.evaluate([self.K.element(Fraction(t)) for t in F.poly], self.w)
        if not check.is_zero():
            raise ArithmeticError("image of w does not satisfy the defining polynomial of F")
        self.degree = len(self.g) - 1

    def embed(self, x):
        """Image in K of an element of F."""
        a, b = (Fraction(t) for t in self.F.element(x).coords)
        return self.K.element(a) + self.K.element(b) * self.w

    def in_base(self, y):
        """y as an element of F if it lies there, else None."""
        cols = [self.K.one().coords, self.w.coords]
        sol = _solve_rational(cols, list(y.coords))
        if sol is None:
            return None
        return self.F.element(sol)

    def minpoly_relative(self, alpha):
        """Monic minimal polynomial of alpha over F, as a list of F elements (constant term first).

        Finds the least d with alpha^d in the F-span of 1, ..., alpha^(d-1),
        solving over Q in the basis {w^j alpha^i}.
        """
        K = self.K
        alpha = K.element(alpha) if not hasattr(alpha, "K") else alpha
        powers = [K.one()]
        for d in range(1, self.degree + 1):
            powers.append(powers[-1] * alpha)
            cols = []
            for p in powers[:d]:
                cols.append(list(p.coords))
                cols.append(list((p * self.w).coords))
            sol = _solve_rational(cols, list(powers[d].coords))
            if sol is not None:
                coeffs = [self.F.element([-sol[2 * i], -sol[2 * i + 1]]) for i in range(d)]
                return coeffs + [self.F.one()]
        raise ArithmeticError("no relation found up to the relative degree")

    def relative_norm(self, alpha):
        m = self.minpoly_relative(alpha)
        d = len(m) - 1
        c0 = m[0] if d % 2 == 0 else -m[0]
        return c0 ** (self.degree // d)

    def relative_discriminant_poly(self, poly):
        """Discriminant (an element of F) of a polynomial with coefficients in F."""
        return P.discriminant(poly)


def _solve_rational(cols, rhs):
    """Solve sum_j x_j cols[j] = rhs over Q; None if inconsistent."""
    M = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Rational(c)
                       for c in col] for col in cols]).T
    b = sympy.Matrix([sympy.Rational(Fraction(t).numerator, Fraction(t).denominator) for t in rhs])
    try:
        sol, params = M.gauss_jordan_solve(b)
    except ValueError:
        return None
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return [Fraction(int(sympy.fraction(s)[0]), int(sympy.fraction(s)[1])) for s in sol]
