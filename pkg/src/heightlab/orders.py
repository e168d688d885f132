"""Maximal orders by the round 2 algorithm.

An order is carried as a rational basis matrix whose rows are power-basis
coordinates.  For each prime p whose square divides the polynomial
discriminant, the order is replaced by the multiplier ring of its
p-radical until that ring stops growing.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import sympy

from . import polys as P
from .linalg import det_int, hnf, mat_inv, nullspace_mod_p


def _lcm_den(rows):
    d = 1
    for r in rows:
        for c in r:
            d = d * c.denominator // gcd(d, c.denominator)
    return d


class _Order:
    """Order with basis rows B (Fractions, power coordinates) inside a field K."""

    def __init__(self, K, B):
        self.K = K
        self.B = [[Fraction(c) for c in r] for r in B]
        self.n = K.degree
        self.Binv = mat_inv(self.B)
        self.elems = [K.element(r) for r in self.B]
        self.table = self._table()

    def coords(self, x):
        v = x.coords
        n = self.n
        return [sum(v[i] * self.Binv[i][j] for i in range(n)) for j in range(n)]

    def _table(self):
        T = []
        for a in self.elems:
            row = []
            for b in self.elems:
                c = self.coords(a * b)
                if any(x.denominator != 1 for x in c):
                    raise ArithmeticError("basis does not span an order")
                row.append([int(x) for x in c])
            T.append(row)
        return T

    def mul(self, u, v, p=None):
        n = self.n
        out = [0] * n
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        c = u[i] * v[j]
                        t = self.table[i][j]
                        for k in range(n):
                            out[k] += c * t[k]
        if p:
            out = [x % p for x in out]
        return out


def _radical_mod_p(O, p):
    """F_p basis of the p-radical of O/pO."""
    n = O.n
    e = 1
    q = p
    while q < n:
        q *= p
        e += 1
    images = []
    for i in range(n):
        v = [int(i == j) for j in range(n)]
        x = v
        for _ in range(e):
            # x -> x^p
            y = _one_coords(O)
            base, k = x, p
            while k:
                if k & 1:
                    y = O.mul(y, base, p)
                k >>= 1
                if k:
                    base = O.mul(base, base, p)
            x = y
        images.append(x)
    return nullspace_mod_p(images, p)


def _one_coords(O):
    return [int(c) for c in O.coords(O.K.one())]


def _p_maximal_step(O, p):
    """Return the multiplier ring of the p-radical, or None if O is p-maximal."""
    n = O.n
    rad = _radical_mod_p(O, p)
    Irows = hnf([list(r) for r in rad] + [[p * int(i == j) for j in range(n)] for i in range(n)], n)
    # express products y * gamma_k in the I-basis, mod p
    Iinv = mat_inv(Irows)
    M = []
    for i in range(n):
        ei = [int(i == j) for j in range(n)]
        row = []
        for g in Irows:
            prod = O.mul(ei, g)
            c = [sum(prod[a] * Iinv[a][b] for a in range(n)) for b in range(n)]
            if any(x.denominator != 1 for x in c):
                raise ArithmeticError("radical is not an ideal")
            row += [int(x) % p for x in c]
        M.append(row)
    ker = nullspace_mod_p(M, p)
    if not ker:
        return None
    V = hnf([list(r) for r in ker] + [[p * int(i == j) for j in range(n)] for i in range(n)], n)
    if len(V) == n and abs(det_int(V)) == p ** n:
        return None
    newB = []
    for row in V:
        acc = [Fraction(0)] * n
        for c, b in zip(row, O.B):
            if c:
                acc = [a + Fraction(c, p) * x for a, x in zip(acc, b)]
        newB.append(acc)
    return _normal_basis(newB, n)


def _normal_basis(B, n):
    """Lower triangular basis (element i has degree i) via HNF on reversed columns."""
    d = _lcm_den(B)
    rows = [[int(c * d) for c in reversed(r)] for r in B]
    H = hnf(rows, n)
    out = [[Fraction(c, d) for c in reversed(r)] for r in H]
    out.reverse()
    return out


def maximal_order_basis(K):
    """(num, den) with rows num[i]/den the power coordinates of an integral basis."""
    n = K.degree
    if n == 1:
        return [[1]], 1
    disc = int(P.discriminant(list(K.poly)))
    B = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for p, e in sorted(sympy.factorint(abs(disc)).items()):
        if e < 2:
            continue
        while True:
            O = _Order(K, B)
            nb = _p_maximal_step(O, p)
            if nb is None:
                break
            B = nb
    d = _lcm_den(B)
    return [[int(c * d) for c in r] for r in B], d
