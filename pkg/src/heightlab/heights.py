"""Weil heights with exact comparison against rational bounds.

A height is carried as ``factor * |prod_{i in S} r_i| ** k`` where the r_i
are the roots (with multiplicity) of an exactly known polynomial g and S
is the set of roots of modulus greater than one.  Comparisons first use
ball arithmetic; near-ties are settled exactly: the product of a subset
of roots is a root of a compound polynomial built from power sums, and a
Cauchy lower bound on the distance to its other roots isolates it.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from . import polys as P
from .balls import Ball, isolate_roots, rational_interval

MAX_PREC = 1 << 13


class PrecisionExhausted(RuntimeError):
    pass


@lru_cache(maxsize=4096)
def _compound_power(g, size, k):
    """Squarefree polynomial whose roots include every (product of `size` roots of g) ** k."""
    R = P.compound(list(g), size)
    if k > 1:
        N = len(R) - 1
        ps = P.power_sums(R, k * N)
        R = P.from_power_sums([N] + [ps[k * m] for m in range(1, N + 1)], N)
    R = [Fraction(c) for c in R]
    G = P.gcd(R, P.deriv(R)) if len(R) > 2 else [Fraction(1)]
    if len(G) > 1:
        R = P.monic(P.divmod_poly(R, G)[0])
    return tuple(R)


def _product_equals(g, balls, subset, k, target):
    """Decide (prod_{i in subset} r_i) ** k == target exactly; None means more precision is needed."""
    prod = Ball.exact(1, balls[0].prec)
    for i in subset:
        prod = prod * balls[i]
    if k > 1:
        prod = prod ** k
    lo, hi = rational_interval(target, prod.prec + 20)
    with mp.workprec(prod.prec + 20):
        if abs(prod.mid - lo) > prod.rad + (hi - lo):
            return False
    R = _compound_power(tuple(g), len(subset), k)
    if P.evaluate(list(R), target) != 0:
        return None
    rest = P.divmod_poly(list(R), [-target, Fraction(1)])[0]
    if len(rest) <= 1:
        return True
    shifted = P.compose(rest, [target, Fraction(1)])
    delta = P.cauchy_root_lower_bound(shifted)
    lo, hi = rational_interval(target, prod.prec + 20)
    dlo, _ = rational_interval(delta, prod.prec + 20)
    with mp.workprec(prod.prec + 20):
        dist = abs(prod.mid - lo) + (hi - lo) + prod.rad
        return True if dist < dlo else None


class HeightValue:
    """Exact-comparable height value factor * |prod of big roots| ** k."""

    def __init__(self, factor, g, k, ball_fn, conj_fn, label=""):
        self.factor = Fraction(factor)
        self.g = tuple(Fraction(c) for c in g)
        self.k = k
        self._ball_fn = ball_fn
        self._conj = conj_fn
        self.label = label
        self._state = {}

    @classmethod
    def one(cls):
        return cls(1, [Fraction(-1), Fraction(1)], 1, lambda prec: [Ball.exact(1, prec)], lambda i: i)

    def _classify(self, prec):
        """(big indices, ball of value) at precision prec, or None if some modulus is undecided."""
        if prec in self._state:
            return self._state[prec]
        balls = self._ball_fn(prec)
        big = []
        for i, b in enumerate(balls):
            with mp.workprec(prec):
                lo, hi = b.lower(), b.upper()
            if lo > 1:
                big.append(i)
            elif hi < 1:
                continue
            else:
                j = self._conj(i)
                subset = [i] if j == i else [i, j]
                if j == i:
                    on_circle = (_product_equals(self.g, balls, [i], 1, Fraction(1)) is True
                                 or _product_equals(self.g, balls, [i], 1, Fraction(-1)) is True)
                else:
                    on_circle = _product_equals(self.g, balls, subset, 1, Fraction(1)) is True
                if not on_circle:
                    self._state[prec] = None
                    return None
        val = Ball.exact(1, prec)
        for i in big:
            val = val * balls[i]
        val = val.abs() ** self.k * Ball.exact(self.factor, prec)
        res = (big, val, balls)
        self._state[prec] = res
        return res

    def compare(self, bound):
        """Return -1, 0 or 1 as the height is below, equal to, or above the rational bound."""
        bound = Fraction(bound)
        prec = 64
        while prec <= MAX_PREC:
            st = self._classify(prec)
            if st is not None:
                big, val, balls = st
                blo, bhi = rational_interval(bound, prec + 20)
                with mp.workprec(prec + 20):
                    if val.mid.real + val.rad < blo:
                        return -1
                    if val.mid.real - val.rad > bhi:
                        return 1
                target = bound / self.factor
                if not big:
                    return (1 > target) - (1 < target)
                for t in (target, -target):
                    eq = _product_equals(self.g, balls, big, self.k, t)
                    if eq is True:
                        return 0
            prec *= 2
        raise PrecisionExhausted("height comparison did not terminate")

    def __le__(self, bound):
        return self.compare(bound) <= 0

    def __lt__(self, bound):
        return self.compare(bound) < 0

    def __ge__(self, bound):
        return self.compare(bound) >= 0

    def __gt__(self, bound):
        return self.compare(bound) > 0

    def equals(self, bound):
        return self.compare(bound) == 0

    def ball(self, prec=128):
        p = prec
        while p <= MAX_PREC:
            st = self._classify(p)
            if st is not None:
                return st[1]
            p *= 2
        raise PrecisionExhausted("could not classify conjugate moduli")

    def approx(self, prec=128):
        with mp.workprec(prec):
            return +mpmath.re(self.ball(prec).mid)

    def __float__(self):
        return float(self.approx())

    def log(self):
        return mpmath.log(self.approx())

    def __repr__(self):
        return f"HeightValue({mpmath.nstr(self.approx(), 15)})"


# the two routes

def height(x):
    """H_K(x) via the primitive integral minimal polynomial (Mahler measure route).

    H_K(x) = (lead * prod max(1, |root|)) ** [K : Q(x)], with H(0) = 1.
    """
    if x.is_zero():
        return HeightValue.one()
    m = x.minpoly()
    d = len(m) - 1
    k = x.K.degree // d
    prim = P.primitive_integer(m)
    lead = prim[-1]
    g = [Fraction(c) for c in m]
    if d == 1:
        root = -g[0]
        return HeightValue(Fraction(lead) ** k, g, k, lambda prec: [Ball.exact(root, prec)], lambda i: i,
                           label="mahler")
    cache = {}

    def balls(prec):
        if prec not in cache:
            reals, cplx = isolate_roots(g, prec)
            out = list(reals)
            for b in cplx:
                out += [b, b.conj()]
            cache[prec] = out
        return cache[prec]

    nreal = [None]

    def conj(i):
        if nreal[0] is None:
            nreal[0] = len(isolate_roots(g, 64)[0])
        r1 = nreal[0]
        if i < r1:
            return i
        return i + 1 if (i - r1) % 2 == 0 else i - 1

    return HeightValue(Fraction(lead) ** k, g, k, balls, conj, label="mahler")


def height_norm_formula(x):
    """H_K(x) = N(b) * prod_{v | inf} max(1, |x|_v^{n_v}) with b the denominator ideal."""
    if x.is_zero():
        raise ValueError("the norm formula needs a nonzero element")
    K = x.K
    if x.is_integral():
        Nb = Fraction(1)
    else:
        from .ideals import numerator_denominator_ideals
        Nb = numerator_denominator_ideals(x)[1].norm()
    g = x.charpoly()
    return HeightValue(Nb, g, 1, lambda prec: x.embeddings(prec), K.conjugate_index, label="norm")


def log_height(x):
    return height(x).log()


def log_embedding(x, prec=64):
    """lambda(x): (n_v log|x|_v) over archimedean places, as mpf values."""
    emb = x.embeddings(prec)
    out = []
    with mp.workprec(prec):
        for i, loc in x.K.place_indices():
            out.append(loc * mpmath.log(abs(emb[i].mid)))
    return out


def log_embedding_float(x):
    return [float(v) for v in log_embedding(x)]


def finite_absolute_value(x, P):
    """|x|_P ** n_P = N(P) ** (-v_P(x)) as a Fraction."""
    v = P.valuation_element(x)
    return Fraction(1, int(P.norm()) ** v) if v >= 0 else Fraction(int(P.norm()) ** (-v))


def height_by_places(x):
    """Float height as the product over all places; used as a third cross-check."""
    if x.is_zero():
        return 1.0
    from .ideals import numerator_denominator_ideals
    import sympy
    a, b = numerator_denominator_ideals(x)
    fin = 1.0
    for Pr, e in (a * b).factor():
        val = finite_absolute_value(x, Pr)
        fin *= max(1.0, float(val))
    arch = 1.0
    emb = x.embeddings(64)
    for i, loc in x.K.place_indices():
        arch *= max(1.0, float(abs(emb[i].mid)) ** loc)
    return fin * arch
