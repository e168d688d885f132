"""Residues of Hecke eigenvalues and orders of projective Frobenius elements.

Eigenvalues live in Z[e], with e = (1 + sqrt 5)/2 (coefficient field "sqrt5") or
e = sqrt 2 ("sqrt2"), and are written as pairs (c0, c1) = c0 + c1 e.  The
supported reductions are

* Z[e] mod 2 = F4 for e golden, labelled so that e reduces to alpha^2 (alpha = e + 1);
* Z[e] mod sqrt 5 = F5 for e golden, where e reduces to 3;
* Z[sqrt 2] mod sqrt 2 = F2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class FiniteField:
    """GF(p^m) as F_p[t] modulo a monic irreducible; elements are coefficient tuples (low first)."""

    def __init__(self, p, modulus):
        self.p = p
        self.modulus = tuple(c % p for c in modulus)
        self.m = len(modulus) - 1
        self.size = p ** self.m

    def elements(self):
        return [tuple(v) for v in itertools.product(range(self.p), repeat=self.m)]

    def zero(self):
        return (0,) * self.m

    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def scalar(self, c):
        return (c % self.p,) + (0,) * (self.m - 1)

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a % self.p for a in x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] = (prod[i + j] + a * b) % p
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                for j in range(m + 1):
                    prod[k - m + j] = (prod[k - m + j] - c * self.modulus[j]) % p
        return tuple(prod[:m])

    def pow(self, x, n):
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def inv(self, x):
        if x == self.zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(x, self.size - 2)

    def order(self, x):
        if x == self.zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        k, y = 1, x
        while y != self.one():
            y = self.mul(y, x)
            k += 1
        return k


@lru_cache(maxsize=None)
def _irreducible(p, m):
    for tail in itertools.product(range(p), repeat=m):
        f = tail + (1,)
        if f[0] == 0:
            continue
        if _is_irreducible(p, f):
            return f
    raise ValueError("no irreducible polynomial found")


def _is_irreducible(p, f):
    import sympy
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(f)), x, modulus=p)
    return poly.is_irreducible


@dataclass(frozen=True)
class Residue:
    """An element of a small residue field: F2, F5, or F4 written c0 + c1*alpha."""

    field: str
    value: tuple

    @property
    def label(self):
        if self.field == "F4":
            return {(0, 0): "0", (1, 0): "1", (0, 1): "alpha", (1, 1): "alpha^2"}[self.value]
        return str(self.value[0])

    def __str__(self):
        return self.label


RESIDUE_FIELDS = {("sqrt5", "2"): "F4", ("sqrt5", "sqrt5"): "F5", ("sqrt2", "sqrt2"): "F2"}


def residue_characteristic(field):
    return {"F2": 2, "F4": 2, "F5": 5}[field]


def reduce_eigenvalue(a, coeff_field, modulus):
    """Reduce a = c0 + c1 e modulo the prime `modulus` of Z[e]."""
    key = (coeff_field, modulus)
    if key not in RESIDUE_FIELDS:
        raise ValueError(f"unsupported reduction of Z[{coeff_field}] modulo {modulus}")
    c0, c1 = (int(t) for t in a)
    field = RESIDUE_FIELDS[key]
    if field == "F4":
        # e -> alpha^2 = alpha + 1
        return Residue(field, ((c0 + c1) % 2, c1 % 2))
    if field == "F5":
        return Residue(field, ((c0 + 3 * c1) % 5,))
    return Residue(field, (c0 % 2,))


def reduce_integer(q, field):
    return Residue(field, (q % residue_characteristic(field), 0) if field == "F4" else (q % residue_characteristic(field),))


@lru_cache(maxsize=None)
def _quadratic_extension(field):
    """(big field, embedding of the residue field) with big field of degree 2 over it."""
    if field == "F2":
        big = FiniteField(2, _irreducible(2, 2))
        return big, lambda r: big.scalar(r.value[0])
    if field == "F5":
        big = FiniteField(5, _irreducible(5, 2))
        return big, lambda r: big.scalar(r.value[0])
    big = FiniteField(2, _irreducible(2, 4))
    alpha = next(x for x in big.elements() if x != big.zero() and big.order(x) == 3)

    def embed(r):
        c0, c1 = r.value
        return big.add(big.scalar(c0), big.mul(big.scalar(c1), alpha))

    return big, embed


def projective_frobenius_order(a, q):
    """Order in PGL2 of an element with characteristic polynomial x^2 - a x + q over the residue field.

    a and q are Residues in the same field.  The roots lie in the quadratic
    extension; the projective order is the multiplicative order of their ratio.
    A repeated root gives 1 (the semisimple element is scalar).
    """
    if a.field != q.field:
        raise ValueError("trace and determinant must lie in the same residue field")
    if all(c == 0 for c in q.value):
        raise ValueError("determinant is zero: the prime lies above the residue characteristic")
    big, embed = _quadratic_extension(a.field)
    A, Q = embed(a), embed(q)
    roots = [x for x in big.elements()
             if big.add(big.sub(big.mul(x, x), big.mul(A, x)), Q) == big.zero()]
    if len(roots) == 1:
        return 1
    if len(roots) != 2:
        raise ArithmeticError("characteristic polynomial has no roots in the quadratic extension")
    r1, r2 = roots
    return big.order(big.mul(r1, big.inv(r2)))


def pgl2_orders_bruteforce(a, q):
    """Projective orders of all matrices in GL2(k) with trace a and determinant q.

    Independent of the root computation: works with matrices over the residue
    field itself.  Returns the set of orders observed.
    """
    if all(c == 0 for c in q.value):
        raise ValueError("determinant is zero")
    if a.field == "F4":
        k = FiniteField(2, (1, 1, 1))  # F4 = F2[alpha]/(alpha^2 + alpha + 1)
        A, Q = a.value, q.value
    else:
        p = residue_characteristic(a.field)
        k = FiniteField(p, (0, 1))
        A, Q = (a.value[0] % p,), (q.value[0] % p,)
    els = k.elements()
    scalars = {((c, k.zero()), (k.zero(), c)) for c in els if c != k.zero()}

    def mm(X, Y):
        return tuple(tuple(k.add(k.mul(X[i][0], Y[0][j]), k.mul(X[i][1], Y[1][j])) for j in range(2))
                     for i in range(2))

    orders = set()
    for m11, m12, m21, m22 in itertools.product(els, repeat=4):
        if k.add(m11, m22) != A:
            continue
        if k.sub(k.mul(m11, m22), k.mul(m12, m21)) != Q:
            continue
        M = ((m11, m12), (m21, m22))
        X, n = M, 1
        while X not in scalars:
            X = mm(X, M)
            n += 1
        orders.add(n)
    return orders


@dataclass
class FrobeniusRow:
    Np: int
    prime: tuple
    eigenvalue: tuple
    residues: dict
    orders: dict


def frobenius_row(Np, prime, a, coeff_field, moduli):
    """Residues and projective orders of one prime; None marks primes above the modulus."""
    residues, orders = {}, {}
    for mod in moduli:
        r = reduce_eigenvalue(a, coeff_field, mod)
        residues[mod] = r
        q = reduce_integer(Np, r.field)
        orders[mod] = None if all(c == 0 for c in q.value) else projective_frobenius_order(r, q)
    return FrobeniusRow(Np, tuple(prime), tuple(a), residues, orders)


def moduli_for(coeff_field):
    return ("2", "sqrt5") if coeff_field == "sqrt5" else ("sqrt2",)
