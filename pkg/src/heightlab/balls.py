"""Midpoint-radius balls over mpmath numbers and certified root isolation."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf, mpc


def _slack(x, prec):
    return abs(x) * mpf(2) ** (-prec + 2) + mpf(2) ** (-10 * prec)


@dataclass(frozen=True)
class Ball:
    """A complex (or real) midpoint with a radius that encloses the true value."""
    mid: object
    rad: object
    prec: int = 53

    @staticmethod
    def exact(x, prec=53):
        """Ball around an int, Fraction or mpmath number; the radius covers conversion rounding."""
        if isinstance(x, int) and abs(x).bit_length() <= prec:
            return Ball(mpf(x), mpf(0), prec)
        return _to_mp(x, prec)

    def _new(self, mid, rad, other_prec=None):
        prec = min(self.prec, other_prec) if other_prec else self.prec
        return Ball(mid, rad + _slack(mid, prec), prec)

    def _coerce(self, other):
        return other if isinstance(other, Ball) else Ball.exact(other, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        with mp.workprec(self.prec):
            return self._new(self.mid + other.mid, self.rad + other.rad, other.prec)

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        with mp.workprec(self.prec):
            mid = self.mid * other.mid
            rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
            return self._new(mid, rad, other.prec)

    __rmul__ = __mul__

    def inverse(self):
        with mp.workprec(self.prec):
            m = abs(self.mid)
            if m <= self.rad:
                raise ZeroDivisionError("ball contains zero")
            mid = 1 / self.mid
            rad = self.rad / (m * (m - self.rad))
            return self._new(mid, rad)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, e):
        out = Ball.exact(1, self.prec)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def abs(self):
        with mp.workprec(self.prec):
            return self._new(abs(self.mid), self.rad)

    def real(self):
        with mp.workprec(self.prec + 128):
            m = mpmath.re(self.mid)
            return Ball(m, self.rad + _slack(m, self.prec + 128), self.prec)

    def conj(self):
        with mp.workprec(self.prec + 128):
            m = mpmath.conj(self.mid)
            return Ball(m, self.rad + _slack(m, self.prec + 128), self.prec)

    def lower(self):
        """Lower bound of |value|."""
        with mp.workprec(self.prec):
            return max(abs(self.mid) - self.rad, mpf(0))

    def upper(self):
        """Upper bound of |value|."""
        with mp.workprec(self.prec):
            return abs(self.mid) + self.rad

    def real_interval(self):
        with mp.workprec(self.prec):
            m = mpmath.re(self.mid)
            return m - self.rad, m + self.rad

    def contains(self, x):
        with mp.workprec(self.prec):
            return abs(self.mid - x) <= self.rad

    def log_abs(self):
        """(lo, hi) enclosing log|value|."""
        with mp.workprec(self.prec):
            lo = abs(self.mid) - self.rad
            hi = abs(self.mid) + self.rad
            if lo <= 0:
                return -mpmath.inf, mpmath.log(hi)
            return mpmath.log(lo), mpmath.log(hi)

    def __float__(self):
        return float(abs(self.mid)) if isinstance(self.mid, mpc) else float(self.mid)

    def __repr__(self):
        return f"Ball({mpmath.nstr(self.mid, 12)} +/- {mpmath.nstr(self.rad, 3)})"


def poly_eval_ball(coeffs, z):
    """Evaluate an exact polynomial (lowest degree first) at a ball."""
    acc = Ball.exact(0, z.prec)
    for c in reversed(coeffs):
        acc = acc * z + _to_mp(c, z.prec)
    return acc


def _to_mp(c, prec):
    from fractions import Fraction
    with mp.workprec(prec):
        if isinstance(c, Fraction):
            v = mpf(c.numerator) / c.denominator
        else:
            v = mpmath.mpmathify(c)
        return Ball(v, _slack(v, prec), prec)


def rational_interval(q, prec):
    """(lo, hi) mpf bounds enclosing the rational q."""
    from fractions import Fraction
    q = Fraction(q)
    with mp.workprec(prec):
        v = mpf(q.numerator) / q.denominator
        s = _slack(v, prec)
        return v - s, v + s


class IsolationError(RuntimeError):
    pass


def isolate_roots(coeffs, prec=64, max_prec=1 << 14):
    """Certified isolating balls for the roots of a squarefree rational polynomial.

    Returns (real_roots, complex_roots) where the real roots are sorted in
    decreasing order and the complex roots come as a list of balls with
    positive imaginary part, sorted by decreasing real part.  Each ball is
    guaranteed to contain exactly one root.
    """
    n = len(coeffs) - 1
    p = prec
    while p <= max_prec:
        res = _try_isolate(coeffs, n, p)
        if res is not None:
            return res
        p *= 2
    raise IsolationError("could not isolate roots; polynomial may not be squarefree")


def _try_isolate(coeffs, n, prec):
    from fractions import Fraction
    with mp.workprec(prec + 30):
        mpco = [mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(coeffs)]
        try:
            approx = mpmath.polyroots(mpco, maxsteps=200 + 4 * prec, extraprec=prec + 40)
        except mpmath.libmp.NoConvergence:
            return None
    dcoeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
    balls = []
    for z in approx:
        zb = Ball(mpmath.mpmathify(z), mpf(0), prec + 30)
        fz = poly_eval_ball(coeffs, zb)
        dz = poly_eval_ball(dcoeffs, zb)
        with mp.workprec(prec + 30):
            if dz.lower() <= 0:
                return None
            r = n * fz.upper() / dz.lower()
        balls.append(Ball(mpmath.mpmathify(z), r, prec))
    with mp.workprec(prec + 30):
        for i in range(n):
            for j in range(i + 1, n):
                if abs(balls[i].mid - balls[j].mid) <= balls[i].rad + balls[j].rad:
                    return None
        reals, cplx = [], []
        for b in balls:
            im = mpmath.im(b.mid)
            if abs(im) <= b.rad:
                reals.append(Ball(mpmath.re(b.mid), b.rad, prec))
            elif im > 0:
                cplx.append(Ball(mpc(b.mid), b.rad, prec))
        if len(reals) + 2 * len(cplx) != n:
            return None
        reals.sort(key=lambda b: -b.mid)
        cplx.sort(key=lambda b: (-mpmath.re(b.mid), -mpmath.im(b.mid)))
    return reals, cplx
