"""Number fields given by a monic integer polynomial, and their elements.

Elements are stored in the power basis of the generator as an integer
numerator vector over a positive common denominator, which keeps exact
arithmetic cheap.  The maximal order is computed on demand (round 2), and
complex embeddings are available as certified balls at any precision.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd

import numpy as np
import sympy
from mpmath import mp, mpf

from . import polys as P
from .balls import Ball, isolate_roots
from .linalg import charpoly_int, det_int, mat_inv


class NumberField:
    """K = Q[x]/(f) for a monic irreducible integer polynomial f (lowest degree first)."""

    def __init__(self, poly, label=None, integral_basis=None, check=True):
        poly = [Fraction(c) for c in poly]
        poly = P.strip(poly)
        if len(poly) < 2:
            raise ValueError("defining polynomial must have degree at least 1")
        if poly[-1] != 1 or any(c.denominator != 1 for c in poly):
            raise ValueError("defining polynomial must be monic with integer coefficients")
        self.poly = tuple(int(c) for c in poly)
        self.degree = len(self.poly) - 1
        self.label = label or "Q[x]/(" + _poly_str(self.poly) + ")"
        if check and self.degree > 1:
            _, facs = P.factor_rational(list(self.poly))
            if len(facs) != 1 or facs[0][1] != 1:
                raise ValueError("defining polynomial is reducible; factor " + _poly_str(facs[0][0]))
        n = self.degree
        # reduction table for x^k, n <= k <= 2n - 2
        self._red = []
        cur = [0] * n
        cur_poly = [-c for c in self.poly[:n]]
        for k in range(n, max(2 * n - 1, n + 1)):
            if k == n:
                cur = cur_poly
            else:
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [a + top * b for a, b in zip(cur, cur_poly)]
            self._red.append(tuple(cur))
        self._cache = {}
        self._roots = {}
        if integral_basis is not None:
            self._set_integral_basis(integral_basis)

    # basics

    def __repr__(self):
        return f"NumberField({self.label})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __call__(self, x):
        return self.element(x)

    def element(self, x, den=1):
        if isinstance(x, NFElement):
            if x.K != self:
                raise ValueError("element belongs to a different field")
            return x
        if isinstance(x, (int, Fraction)):
            x = Fraction(x) / den
            return NFElement(self, (x.numerator,) + (0,) * (self.degree - 1), x.denominator)
        coords = [Fraction(c) for c in x]
        if len(coords) > self.degree:
            coords = list(P.rem(coords, list(self.poly)))
        coords += [Fraction(0)] * (self.degree - len(coords))
        d = 1
        for c in coords:
            d = d * c.denominator // gcd(d, c.denominator)
        return NFElement(self, tuple(int(c * d) for c in coords), d * den)

    @property
    def gen(self):
        if self.degree == 1:
            return self.element(-self.poly[0])
        return self.element([0, 1])

    def one(self):
        return self.element(1)

    def zero(self):
        return self.element(0)

    def _reduce(self, v):
        n = self.degree
        v = list(v)
        for k in range(len(v) - 1, n - 1, -1):
            c = v[k]
            if c:
                row = self._red[k - n]
                for j in range(n):
                    v[j] += c * row[j]
        return v[:n] + [0] * (n - len(v))

    # embeddings

    def roots(self, prec=64):
        """All n conjugates of the generator as balls.

        Order: real roots in decreasing order, then complex pairs (tau, conj tau)
        with positive imaginary part first.
        """
        if prec in self._roots:
            return self._roots[prec]
        if self.degree == 1:
            out = [Ball.exact(-self.poly[0], prec)]
        else:
            reals, cplx = isolate_roots(list(self.poly), prec)
            out = list(reals)
            for b in cplx:
                out += [b, b.conj()]
        self._roots[prec] = out
        return out

    @cached_property
    def signature(self):
        if self.degree == 1:
            return (1, 0)
        reals, cplx = isolate_roots(list(self.poly), 64)
        return (len(reals), len(cplx))

    @property
    def unit_rank(self):
        r1, r2 = self.signature
        return r1 + r2 - 1

    def place_indices(self):
        """Index into roots() of one embedding per archimedean place, with local degree."""
        r1, r2 = self.signature
        return [(i, 1) for i in range(r1)] + [(r1 + 2 * j, 2) for j in range(r2)]

    def conjugate_index(self, i):
        r1, _ = self.signature
        if i < r1:
            return i
        return i + 1 if (i - r1) % 2 == 0 else i - 1

    # maximal order

    def _set_integral_basis(self, basis):
        rows = [self.element(b) if not isinstance(b, NFElement) else b for b in basis]
        if len(rows) != self.degree:
            raise ValueError("integral basis has wrong length")
        den = 1
        for r in rows:
            den = den * r.den // gcd(den, r.den)
        num = [[c * (den // r.den) for c in r.num] for r in rows]
        self._ib = (num, den)
        for r in rows:
            if not _charpoly_is_integral(r):
                raise ValueError("integral basis element is not integral")
        d = self._compute_disc()
        from .orders import maximal_order_basis
        mnum, mden = maximal_order_basis(self)
        if abs(Fraction(det_int(mnum), mden ** self.degree)) != abs(Fraction(det_int(num), den ** self.degree)):
            raise ValueError("supplied basis does not span the maximal order")
        self._cache["disc"] = d

    @property
    def integral_basis_matrix(self):
        """(num, den): row i of num/den gives power-basis coordinates of the i-th integral basis element."""
        if not hasattr(self, "_ib"):
            from .orders import maximal_order_basis
            self._ib = maximal_order_basis(self)
        return self._ib

    @cached_property
    def integral_basis(self):
        num, den = self.integral_basis_matrix
        return [NFElement(self, tuple(r), den)._normalized() for r in num]

    @cached_property
    def _ib_inverse(self):
        num, den = self.integral_basis_matrix
        return mat_inv(num), den

    def _compute_disc(self):
        num, den = self.integral_basis_matrix
        index = Fraction(den ** self.degree, abs(det_int(num)))
        d = Fraction(P.discriminant(list(self.poly))) / index ** 2
        assert d.denominator == 1
        return int(d)

    @property
    def discriminant(self):
        if "disc" not in self._cache:
            self._cache["disc"] = self._compute_disc()
        return self._cache["disc"]

    @property
    def index(self):
        """[O_K : Z[gen]]."""
        num, den = self.integral_basis_matrix
        return den ** self.degree // abs(det_int(num))

    @cached_property
    def mult_table(self):
        """T[i][j] = integral-basis coordinates of w_i * w_j (integers)."""
        B = self.integral_basis
        T = []
        for i in range(self.degree):
            row = []
            for j in range(self.degree):
                c = (B[i] * B[j]).ib_coords()
                if any(x.denominator != 1 for x in c):
                    raise ArithmeticError("integral basis is not closed under multiplication")
                row.append(tuple(int(x) for x in c))
            T.append(row)
        return T

    def from_ib(self, v):
        num, den = self.integral_basis_matrix
        n = self.degree
        acc = [0] * n
        for c, row in zip(v, num):
            c = Fraction(c)
            if c:
                for j in range(n):
                    acc[j] += c * row[j]
        return self.element([a / den for a in acc])

    @cached_property
    def minkowski_float(self):
        """Rows: Minkowski vectors of the integral basis, so T2(x) = |coords @ M|^2."""
        M = np.zeros((self.degree, self.degree))
        r1, r2 = self.signature
        for i, w in enumerate(self.integral_basis):
            emb = w.embeddings(64)
            vec = []
            for k, loc in self.place_indices():
                z = emb[k].mid
                if loc == 1:
                    vec.append(float(z.real) if hasattr(z, "real") else float(z))
                else:
                    vec += [np.sqrt(2) * float(z.real), np.sqrt(2) * float(z.imag)]
            M[i] = vec
        return M

    def is_quadratic(self):
        return self.degree == 2


def _charpoly_is_integral(x):
    return all(Fraction(c).denominator == 1 for c in x.charpoly())


def _poly_str(p):
    return str(sympy.Poly(list(reversed([int(c) if Fraction(c).denominator == 1 else sympy.Rational(str(c)) for c in p])), sympy.Symbol("x")).as_expr())


class NFElement:
    """An element num/den of a number field in power-basis coordinates."""

    __slots__ = ("K", "num", "den")

    def __init__(self, K, num, den=1):
        self.K = K
        self.num = tuple(num)
        self.den = den
        self._normalize_inplace()

    def _normalize_inplace(self):
        den = self.den
        if den < 0:
            self.num = tuple(-c for c in self.num)
            den = -den
        g = den
        for c in self.num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            self.num = tuple(c // g for c in self.num)
            den //= g
        self.den = den

    def _normalized(self):
        return self

    @property
    def coords(self):
        return [Fraction(c, self.den) for c in self.num]

    def __repr__(self):
        return f"NFElement({_element_str(self)})"

    def __str__(self):
        return _element_str(self)

    def _coerce(self, other):
        if isinstance(other, NFElement):
            if other.K is not self.K and other.K != self.K:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.K.element(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.den * other.den
        return NFElement(self.K, tuple(a * other.den + b * self.den for a, b in zip(self.num, other.num)), d)

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.K, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return NFElement(self.K, tuple(a * other.numerator for a in self.num), self.den * other.denominator)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        n = len(a)
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return NFElement(self.K, tuple(self.K._reduce(conv)), self.den * other.den)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.num)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.K.degree == 1:
            return self.K.element(Fraction(self.den, self.num[0]))
        a = P.strip(list(self.num))
        g, s, t = P.xgcd(a, list(self.K.poly))
        if len(g) != 1:
            raise ArithmeticError("non-invertible element")
        return self.K.element([c * self.den for c in s])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return NFElement(self.K, tuple(a * other.denominator for a in self.num), self.den * other.numerator)
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.K.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.K == other.K and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return (self.num[0] == other.numerator and self.den == other.denominator
                    and not any(self.num[1:])) or (other == 0 and self.is_zero())
        return NotImplemented

    def __hash__(self):
        if not any(self.num[1:]):
            return hash(Fraction(self.num[0], self.den))
        return hash((self.K.poly, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # invariants

    def mult_matrix(self):
        """Integer matrix of multiplication by the numerator on the power basis (rows = images of x^i)."""
        n = self.K.degree
        rows = []
        cur = list(self.num)
        for _ in range(n):
            rows.append(list(cur))
            cur = self.K._reduce([0] + cur)
        return rows

    def charpoly(self):
        """Characteristic polynomial over Q (Fractions, lowest degree first, monic)."""
        M = self.mult_matrix()
        cp = charpoly_int(M)
        n = self.K.degree
        return [Fraction(cp[k] * self.den ** k, self.den ** n) for k in range(n + 1)]

    def minpoly(self):
        cp = self.charpoly()
        g = P.gcd(cp, P.deriv(cp))
        if len(g) <= 1:
            return cp
        return P.monic(P.divmod_poly(cp, g)[0])

    def norm(self):
        return Fraction(det_int(self.mult_matrix()), self.den ** self.K.degree)

    def trace(self):
        return -self.charpoly()[-2] if self.K.degree > 0 else Fraction(0)

    def is_rational(self):
        return not any(self.num[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def ib_coords(self):
        inv, ibden = self.K._ib_inverse
        n = self.K.degree
        out = [Fraction(0)] * n
        for i, c in enumerate(self.num):
            if c:
                row = inv[i]
                for j in range(n):
                    out[j] += c * row[j]
        return [x * ibden / self.den for x in out]

    def is_integral(self):
        if self.den == 1:
            return True
        return all(c.denominator == 1 for c in self.ib_coords())

    def embeddings(self, prec=64):
        """All conjugates as balls, in the field's root order."""
        roots = self.K.roots(prec)
        out = []
        coeffs = [Fraction(c, self.den) for c in self.num]
        from .balls import poly_eval_ball
        for r in roots:
            out.append(poly_eval_ball(coeffs, r))
        return out

    def embeddings_float(self):
        return [complex(b.mid) for b in self.embeddings(64)]

    def denominator_ideal_norm(self):
        """N(O_K cap x^{-1} O_K) computed as d^n / N((dx) + (d))."""
        from .ideals import Ideal
        return Ideal.denominator_ideal(self).norm()


def _element_str(x):
    K = x.K
    name = getattr(K, "var_name", "a")
    terms = []
    for i, c in enumerate(x.num):
        if not c:
            continue
        mon = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        if i == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}*{mon}")
    s = " + ".join(terms).replace("+ -", "- ") if terms else "0"
    if x.den != 1:
        s = f"({s})/{x.den}"
    return s


# field constructors

_REGISTRY = {}


def quadratic_field(D):
    """Q(sqrt D) with generator w = (1 + sqrt D)/2 when D = 1 mod 4, else w = sqrt D."""
    D = int(D)
    if D in (0, 1) or any(e > 1 for e in sympy.factorint(abs(D)).values()):
        raise ValueError("D must be a squarefree integer different from 0 and 1")
    label = "Q(i)" if D == -1 else f"Q(sqrt{D})"
    if label in _REGISTRY:
        return _REGISTRY[label]
    if D % 4 == 1:
        poly = [-(D - 1) // 4, -1, 1]
        disc = D
    else:
        poly = [-D, 0, 1]
        disc = 4 * D
    K = NumberField(poly, label=label, check=False)
    K.var_name = "i" if D == -1 else "w"
    # Z[w] is maximal for this choice of generator
    K._ib = ([[1, 0], [0, 1]], 1)
    K._cache["disc"] = disc
    K.quadratic_D = D
    _REGISTRY[label] = K
    return K


def rationals():
    if "Q" not in _REGISTRY:
        K = NumberField([0, 1], label="Q", check=False)
        K._ib = ([[1]], 1)
        K._cache["disc"] = 1
        _REGISTRY["Q"] = K
    return _REGISTRY["Q"]


def field_from_label(label):
    """Known labels: 'Q', 'Q(i)', 'Q(sqrtD)', and registered custom labels."""
    label = label.strip()
    if label in _REGISTRY:
        return _REGISTRY[label]
    if label == "Q":
        return rationals()
    if label == "Q(i)":
        return quadratic_field(-1)
    if label.startswith("Q(sqrt") and label.endswith(")"):
        return quadratic_field(int(label[6:-1]))
    from .datasets import named_field
    K = named_field(label)
    if K is None:
        raise KeyError(f"unknown field label {label!r}")
    return K


def register_field(K):
    _REGISTRY[K.label] = K
    return K


def field_from_json(obj):
    """Build a field from {"poly": [c0..cn], "integral_basis": optional, "label": optional}."""
    if "poly" not in obj:
        if "label" in obj:
            return field_from_label(obj["label"])
        raise ValueError("field description needs 'poly' or 'label'")
    poly = obj["poly"]
    label = obj.get("label")
    if label and label in _REGISTRY and list(_REGISTRY[label].poly) == list(poly):
        return _REGISTRY[label]
    ib = obj.get("integral_basis")
    basis = None
    if ib is not None:
        basis = [[Fraction(c) if not isinstance(c, str) else Fraction(c) for c in row] for row in ib]
    K = NumberField(poly, label=label, integral_basis=basis)
    if label:
        register_field(K)
    return K


def field_to_json(K):
    num, den = K.integral_basis_matrix
    return {"label": K.label, "poly": list(K.poly),
            "integral_basis": [[str(Fraction(c, den)) for c in row] for row in num]}
