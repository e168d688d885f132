"""Ideals of the maximal order in Hermite normal form, prime splitting and principal generators.

An ideal is stored as (H, den): H is an HNF matrix over the integral
basis and the ideal is (1/den) times the row lattice of H.  Primes above p
not dividing the index come from factoring the defining polynomial mod p;
for index divisors the algebra O_K/pO_K is split directly.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import ceil, exp, gcd, log, sqrt

import numpy as np
import sympy

from .linalg import (fincke_pohst, hnf, hnf_det, kernel_mod, lattice_contains, lll_basis, lll_gram,
                     nullspace_mod_p, row_basis_mod_p)
from .numfield import NFElement


def _ib_mul(K, u, v):
    T = K.mult_table
    n = K.degree
    out = [0] * n
    for i in range(n):
        a = u[i]
        if a:
            Ti = T[i]
            for j in range(n):
                b = v[j]
                if b:
                    c = a * b
                    t = Ti[j]
                    for k in range(n):
                        if t[k]:
                            out[k] += c * t[k]
    return out


def _int_coords(x):
    """(integer ib-coordinates of d*x, d) with d the least positive integer making d*x integral."""
    c = x.ib_coords()
    d = 1
    for q in c:
        d = d * q.denominator // gcd(d, q.denominator)
    return [int(q * d) for q in c], d


class Ideal:
    """Fractional ideal (1/den) * rowspan(H) of the maximal order."""

    def __init__(self, K, H, den=1):
        self.K = K
        g = den
        for row in H:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            H = [[x // g for x in row] for row in H]
            den //= g
        self.H = tuple(tuple(r) for r in H)
        self.den = den
        if len(self.H) != K.degree:
            raise ValueError("ideal lattice must have full rank")

    # constructors

    @classmethod
    def from_generators(cls, K, gens):
        gens = [K.element(g) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("the zero ideal is not supported")
        coords = []
        d = 1
        raw = []
        for g in gens:
            v, dg = _int_coords(g)
            raw.append((v, dg))
            d = d * dg // gcd(d, dg)
        n = K.degree
        rows = []
        modulus = None
        for v, dg in raw:
            v = [c * (d // dg) for c in v]
            m = abs(K.from_ib(v).norm())
            assert m.denominator == 1
            modulus = int(m) if modulus is None else gcd(modulus, int(m))
            for j in range(n):
                ej = [int(i == j) for i in range(n)]
                rows.append(_ib_mul(K, v, ej))
        H = hnf(rows, n, modulus=modulus)
        return cls(K, H, d)

    @classmethod
    def principal(cls, x):
        return cls.from_generators(x.K, [x])

    @classmethod
    def unit(cls, K):
        n = K.degree
        return cls(K, [[int(i == j) for j in range(n)] for i in range(n)], 1)

    @classmethod
    def denominator_ideal(cls, x):
        """O_K cap x^{-1} O_K for nonzero x."""
        return numerator_denominator_ideals(x)[1]

    # basic data

    def norm(self):
        return Fraction(hnf_det(self.H), self.den ** self.K.degree)

    def is_integral(self):
        return self.den == 1

    def is_one(self):
        return self.den == 1 and hnf_det(self.H) == 1

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.K == other.K and self.H == other.H and self.den == other.den

    def __hash__(self):
        return hash((self.H, self.den))

    def __repr__(self):
        if self.den == 1:
            return f"Ideal(norm={self.norm()}, hnf={[list(r) for r in self.H]})"
        return f"Ideal(norm={self.norm()}, hnf={[list(r) for r in self.H]}/{self.den})"

    def sort_key(self):
        return (self.norm(), self.den, self.H)

    def basis_elements(self):
        return [self.K.from_ib([Fraction(c, self.den) for c in row]) for row in self.H]

    def contains(self, x):
        x = self.K.element(x)
        c = [q * self.den for q in x.ib_coords()]
        if any(q.denominator != 1 for q in c):
            return False
        return lattice_contains(self.H, [int(q) for q in c])

    # arithmetic

    def __mul__(self, other):
        if isinstance(other, NFElement):
            other = Ideal.principal(other)
        K = self.K
        n = K.degree
        rows = [_ib_mul(K, a, b) for a in self.H for b in other.H]
        modulus = hnf_det(self.H) * hnf_det(other.H)
        return Ideal(K, hnf(rows, n, modulus=modulus), self.den * other.den)

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = Ideal.unit(self.K)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __add__(self, other):
        d = self.den * other.den // gcd(self.den, other.den)
        rows = [[x * (d // self.den) for x in r] for r in self.H] + [[x * (d // other.den) for x in r] for r in other.H]
        modulus = gcd(hnf_det(self.H) * (d // self.den), hnf_det(other.H) * (d // other.den))
        return Ideal(self.K, hnf(rows, self.K.degree, modulus=modulus), d)

    def inverse(self):
        K = self.K
        n = K.degree
        N = hnf_det(self.H)
        # {y in O_K : y*I subset N*O_K}
        M = []
        for i in range(n):
            ei = [int(i == j) for j in range(n)]
            row = []
            for b in self.H:
                row += _ib_mul(K, ei, list(b))
            M.append(row)
        L = kernel_mod(M, N)
        return Ideal(K, [[x * self.den for x in r] for r in L], N)

    def __truediv__(self, other):
        return self * other.inverse()

    def integral_part_pair(self):
        """(numerator, denominator) coprime integral ideals with self = num / den."""
        num, den = Ideal.unit(self.K), Ideal.unit(self.K)
        for P, e in self.factor():
            if e > 0:
                num = num * P ** e
            else:
                den = den * P ** (-e)
        return num, den

    def is_coprime(self, other):
        if gcd(int(self.norm()), int(other.norm())) == 1:
            return True
        return (self + other).is_one()

    # factorization

    def valuation(self, P):
        v_num = min(P.valuation_ib(list(r)) for r in self.H)
        return v_num - P.e * _vp(self.den, P.p)

    def factor(self):
        """List of (PrimeIdeal, exponent), exponents nonzero, sorted by prime."""
        N = hnf_det(self.H)
        primes = set(sympy.factorint(N)) | set(sympy.factorint(self.den))
        out = []
        for p in sorted(primes):
            for P in prime_ideals_above(self.K, p):
                v = self.valuation(P)
                if v:
                    out.append((P, v))
        return out


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PrimeIdeal(Ideal):
    """A prime of O_K above p, with ramification index e and residue degree f."""

    def __init__(self, K, H, p, e, f, beta, pi):
        super().__init__(K, H, 1)
        self.p = p
        self.e = e
        self.f = f
        self._beta = beta
        self.pi = pi

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f}, pi={self.pi})"

    @property
    def generators(self):
        return (self.K.element(self.p), self.pi)

    def valuation_ib(self, v):
        """v_P of the integral element with ib-coordinates v."""
        if not any(v):
            raise ValueError("valuation of zero")
        k = 0
        y = list(v)
        p = self.p
        while True:
            z = _ib_mul(self.K, y, self._beta)
            if any(c % p for c in z):
                return k
            y = [c // p for c in z]
            k += 1

    def valuation_element(self, x):
        v, d = _int_coords(x)
        return self.valuation_ib(v) - self.e * _vp(d, self.p)


# prime splitting

def _fp_mul(K, u, v, p):
    return [c % p for c in _ib_mul(K, u, v)]


def _fp_pow(K, u, e, p):
    n = K.degree
    one = [c % p for c in _one_ib(K)]
    out = one
    base = u
    while e:
        if e & 1:
            out = _fp_mul(K, out, base, p)
        e >>= 1
        if e:
            base = _fp_mul(K, base, base, p)
    return out


def _one_ib(K):
    return [int(c) for c in K.one().ib_coords()]


def _span_contains(basis, v, p):
    return len(row_basis_mod_p(basis + [v], p)) == len(row_basis_mod_p(basis, p)) if basis else not any(x % p for x in v)


def _fp_roots(mu, p):
    """Roots in F_p of a polynomial (lowest degree first) that splits into distinct linear factors."""
    if p < 50:
        return [t for t in range(p) if sum(c * pow(t, i, p) for i, c in enumerate(mu)) % p == 0]
    from .polys import fp_factor
    return sorted((-g[0]) % p for g, _ in fp_factor(mu, p) if len(g) == 2)


def _ideal_times_algebra(K, x, p):
    n = K.degree
    return [_fp_mul(K, x, [int(i == j) for j in range(n)], p) for i in range(n)]


def _split(K, J, p, rng):
    """Split the semisimple algebra A/J (J an ideal of A = O_K/p) into its maximal ideals."""
    n = K.degree
    J = row_basis_mod_p(J, p) if J else []
    # Berlekamp subalgebra: {x : x^p - x in J}
    images = []
    for i in range(n):
        ei = [int(i == j) for j in range(n)]
        xp = _fp_pow(K, ei, p, p)
        images.append([(a - b) % p for a, b in zip(xp, ei)])
    # kernel of A -> A/J of the map
    # Represent A/J via a complement: solve y*images in span(J)
    # Compute nullspace of [images ; J] restricted to first block
    rows = [list(r) for r in images] + [list(r) for r in J]
    ker = nullspace_mod_p(rows, p)
    B = row_basis_mod_p([k[:n] for k in ker], p)
    # B contains J; the number of components is dim B - dim J
    comps = len(B) - len(J)
    if comps <= 1:
        return [J]
    one = [c % p for c in _one_ib(K)]
    for _ in range(200):
        b = [0] * n
        for row in B:
            c = rng.randrange(p)
            b = [(x + c * y) % p for x, y in zip(b, row)]
        # minimal polynomial of b modulo J; it splits into distinct linear factors
        powers = [one]
        while True:
            nxt = _fp_mul(K, powers[-1], b, p)
            if _span_contains(J + powers, nxt, p):
                break
            powers.append(nxt)
        deg = len(powers)
        if deg < 2:
            continue
        rel = nullspace_mod_p(powers + [nxt] + J, p)
        coeffs = next(r[:deg + 1] for r in rel if r[deg] % p)
        inv = pow(coeffs[deg], -1, p)
        mu = [c * inv % p for c in coeffs]
        pieces = []
        for t in _fp_roots(mu, p):
            bt = [(x - t * o) % p for x, o in zip(b, one)]
            pieces.append(row_basis_mod_p(J + _ideal_times_algebra(K, bt, p), p))
        if len(pieces) < 2:
            continue
        out = []
        for Jt in pieces:
            out += _split(K, Jt, p, rng)
        return out
    raise RuntimeError("failed to split residue algebra")


def prime_ideals_above(K, p):
    """All primes of O_K above the rational prime p, sorted by (f, hnf)."""
    cache = K._cache.setdefault("primes", {})
    if p in cache:
        return cache[p]
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    n = K.degree
    if n == 1:
        P = PrimeIdeal(K, [[p]], p, 1, 1, [1], K.element(p))
        cache[p] = [P]
        return cache[p]
    rng = random.Random(p)
    if K.index % p:
        primes = _dedekind_primes(K, p)
        primes.sort(key=lambda P: (P.f, P.e, P.H))
        cache[p] = primes
        return primes
    # radical of O_K/p
    e = 1
    q = p
    while q < n:
        q *= p
        e += 1
    images = [_fp_pow(K, [int(i == j) for j in range(n)], q, p) for i in range(n)]
    R = nullspace_mod_p(images, p)
    maximals = _split(K, R, p, rng)
    primes = []
    for m in maximals:
        H = hnf([list(r) for r in m] + [[p * int(i == j) for j in range(n)] for i in range(n)], n)
        f = n - len(m)
        I = Ideal(K, H, 1)
        beta = _beta(K, I, p)
        P = PrimeIdeal(K, H, p, 0, f, beta, None)
        P.e = P.valuation_ib([p * c for c in _one_ib(K)])
        P.pi = _two_element(K, P, rng)
        primes.append(P)
    if sum(P.e * P.f for P in primes) != n:
        raise ArithmeticError(f"splitting of {p} is inconsistent")
    primes.sort(key=lambda P: (P.f, P.e, P.H))
    cache[p] = primes
    return primes


def _beta(K, I, p):
    """An element of p * I^{-1} outside p O_K (integral ib-coordinates)."""
    inv = I.inverse()
    for row in inv.H:
        cand = [Fraction(c * p, inv.den) for c in row]
        if all(c.denominator == 1 for c in cand):
            cand = [int(c) for c in cand]
            if any(c % p for c in cand):
                return cand
    raise ArithmeticError("could not find a local uniformizer inverse")


def _dedekind_primes(K, p):
    """Primes above p from the factorization of the defining polynomial mod p (p not an index divisor)."""
    from .polys import fp_factor
    theta = K.gen
    out = []
    for g, e in fp_factor(list(K.poly), p):
        pi = sum((theta ** i * c for i, c in enumerate(g)), K.zero())
        I = Ideal.from_generators(K, [K.element(p), pi])
        P = PrimeIdeal(K, [list(r) for r in I.H], p, e, len(g) - 1, None, pi)
        P._beta = _beta(K, I, p)
        out.append(P)
    return out


def _two_element(K, P, rng):
    n = K.degree
    basis = [list(r) for r in P.H]
    cands = [b for b in basis]
    for _ in range(200):
        cands.append([sum(rng.randint(-2, 2) * b[j] for b in basis) for j in range(n)])
    for v in cands:
        if not any(v):
            continue
        x = K.from_ib(v)
        if Ideal.from_generators(K, [K.element(P.p), x]) == P:
            return x
    raise ArithmeticError("no two-element generator found")


def dedekind_splitting(K, p):
    """(e, f) pairs predicted by factoring the defining polynomial mod p; valid when p does not divide the index."""
    from .polys import fp_factor
    return sorted((m, len(g) - 1) for g, m in fp_factor(list(K.poly), p))


# enumeration

def ideals_of_norm_up_to(K, B):
    """All integral ideals of norm at most B, sorted by (norm, hnf)."""
    B = int(B)
    if B < 1:
        return []
    primes = []
    for p in sympy.primerange(2, B + 1):
        for P in prime_ideals_above(K, p):
            if P.norm() <= B:
                primes.append(P)
    out = []

    def rec(i, I, N):
        out.append(I)
        for j in range(i, len(primes)):
            Pn = int(primes[j].norm())
            if N * Pn > B:
                continue
            rec(j, I * primes[j], N * Pn)

    # primes are sorted by p then f; products with nondecreasing index avoid duplicates
    rec(0, Ideal.unit(K), 1)
    out.sort(key=Ideal.sort_key)
    return out


def numerator_denominator_ideals(x):
    """(a, b) coprime integral ideals with (x) = a / b."""
    x = x if isinstance(x, NFElement) else None
    if x is None or x.is_zero():
        raise ValueError("numerator and denominator ideals need a nonzero element")
    K = x.K
    v, d = _int_coords(x)
    dx = K.from_ib(v)
    # b = (d) / ((dx) + (d))
    g = Ideal.from_generators(K, [dx, K.element(d)])
    b = Ideal.from_generators(K, [K.element(d)]) / g
    a = Ideal.principal(dx) / g
    return a, b


# principal generators

@dataclass
class PrincipalSearch:
    generator: object
    status: str  # "principal" | "non-principal" | "not found within bound"


def _place_scaling(K, t):
    """Per-coordinate scaling of Minkowski vectors for a log shift t (one entry per place)."""
    s = []
    for (_, loc), tv in zip(K.place_indices(), t):
        if loc == 1:
            s.append(exp(-tv))
        else:
            s += [exp(-tv / 2)] * 2
    return np.array(s)


def _scaled_search(K, H, target_norm, t, bound, want_units=False, limit=200000):
    """Elements of the lattice H (ib rows) with scaled T2 below bound and |N| = target_norm."""
    M = K.minkowski_float
    Hm = np.array(H, dtype=float) @ M
    S = Hm * _place_scaling(K, t)
    U, _ = lll_basis(S)
    S2 = np.array(U, dtype=float) @ S
    G2 = S2 @ S2.T
    found = []
    for x in fincke_pohst(G2, bound * (1 + 1e-9) + 1e-9, limit=limit):
        if not any(x):
            continue
        coeffs = [sum(x[i] * U[i][j] for i in range(len(x))) for j in range(len(x))]
        v = [sum(coeffs[i] * H[i][k] for i in range(len(H))) for k in range(K.degree)]
        vec = np.array(v, dtype=float) @ M
        # float norm prefilter
        nrm = _float_norm(K, vec)
        if abs(nrm - target_norm) > 1e-6 * target_norm + 1e-6:
            continue
        xe = K.from_ib(v)
        if abs(xe.norm()) == target_norm:
            found.append(xe)
            if not want_units:
                return found
    return found


def _float_norm(K, vec):
    out = 1.0
    k = 0
    for _, loc in K.place_indices():
        if loc == 1:
            out *= abs(vec[k])
            k += 1
        else:
            out *= (vec[k] ** 2 + vec[k + 1] ** 2) / 2
            k += 2
    return abs(out)


def log_grid(K, unit_logs, rho=0.5):
    """Cell centers covering a fundamental domain of the unit log lattice, nearest to 0 first.

    Each cell has sup-norm radius at most rho.  Centers are replaced by their
    shortest translate under small lattice steps, which describes the same
    cell up to units.
    """
    r = len(unit_logs)
    if r == 0:
        return [np.zeros(len(K.place_indices()))]
    B = np.array(unit_logs, dtype=float)
    ms = [max(1, ceil(r * np.abs(b).max() / (2 * rho))) for b in B]
    coeffs = np.array(list(itertools.product(*[[(k + 0.5) / m - 0.5 for k in range(m)] for m in ms])))
    T = coeffs @ B
    best = T.copy()
    best_n = np.einsum("ij,ij->i", T, T)
    for steps in itertools.product((-1, 0, 1), repeat=r):
        if not any(steps):
            continue
        C = T - np.array(steps, dtype=float) @ B
        cn = np.einsum("ij,ij->i", C, C)
        better = cn < best_n - 1e-12
        best[better] = C[better]
        best_n[better] = cn[better]
    order = np.argsort(best_n, kind="stable")
    return [best[i] for i in order]


def _short_generator(I, N, rho=1.0, limit=4000):
    """Look for a generator among the short vectors of I at the balanced point."""
    K = I.K
    n = K.degree
    l0 = np.array([loc * log(N) / n for _, loc in K.place_indices()])
    found = _scaled_search(K, [list(r) for r in I.H], N, l0, n * exp(2 * rho), limit=limit)
    return found[0] if found else None


def _short_elements(I, rho, limit):
    """Nonzero elements of I with scaled T2 below n e^(2 rho), scaled to the balanced point."""
    K = I.K
    n = K.degree
    N = int(I.norm())
    H = [list(r) for r in I.H]
    S = np.array(H, dtype=float) @ K.minkowski_float * (N ** (-1.0 / n))
    U, _ = lll_basis(S)
    S2 = np.array(U, dtype=float) @ S
    for x in fincke_pohst(S2 @ S2.T, n * exp(2 * rho), limit=limit):
        if not any(x):
            continue
        coeffs = [sum(x[i] * U[i][j] for i in range(n)) for j in range(n)]
        yield K.from_ib([sum(coeffs[i] * H[i][k] for i in range(n)) for k in range(n)])


def prime_generator(P, cofactor_bound=2000, limit=4000):
    """Generator of the prime ideal P from relations, or None.

    Each short x in P gives (x) = P J; when every prime of J already has a
    known generator, x divided by their product generates P.
    """
    K = P.K
    known = K._cache.setdefault("prime_generators", {})
    if P in known:
        return known[P]
    NP = int(P.norm())
    for rho in (1.0, 1.5):
        for x in _short_elements(P, rho, limit):
            nx = abs(int(x.norm()))
            if nx == NP:
                known[P] = x
                return x
            if nx // NP > cofactor_bound:
                continue
            J = Ideal.principal(x) / P
            fac = J.factor()
            if all(Q in known for Q, _ in fac):
                g = x
                for Q, e in fac:
                    g = g / known[Q] ** e
                known[P] = g
                return g
    return None


def _generator_from_primes(I):
    g = I.K.one()
    for P, e in I.factor():
        pg = prime_generator(P)
        if pg is None:
            return None
        g = g * pg ** e
    return g


def principal_generator_search(I, rho=0.5, units=None, max_points=None):
    """Search for a generator of the integral ideal I.

    Tries short vectors of I, then products of prime generators, then a
    covering of the log fundamental domain by cells visited nearest the
    balanced point first.  With certified units the whole covering is
    searched, so failure proves non-principality; otherwise at most
    max_points cells (default 3000) are tried.
    """
    K = I.K
    if not I.is_integral():
        raise ValueError("principal_generator needs an integral ideal")
    cache = K._cache.setdefault("principal", {})
    if I in cache:
        return cache[I]
    N = int(I.norm())
    if N == 1:
        res = PrincipalSearch(K.one(), "principal")
        cache[I] = res
        return res
    from .units import unit_group
    U = units or unit_group(K)
    g = _short_generator(I, N)
    if g is None and K.degree > 2:
        g = _generator_from_primes(I)
        if g is not None:
            from .units import reduce_by_units
            g = reduce_by_units(U, g)
    if g is not None:
        res = PrincipalSearch(g, "principal")
        cache[I] = res
        return res
    logs = U.log_lattice().basis_float() if U.rank else []
    n = K.degree
    l0 = np.array([loc * log(N) / n for _, loc in K.place_indices()])
    bound = n * exp(2 * rho)
    H = [list(r) for r in I.H]
    grid = log_grid(K, logs, rho)
    exhaustive = U.certified == "certified-fundamental"
    if not exhaustive:
        grid = grid[:max_points or 3000]
    elif max_points is not None and max_points < len(grid):
        grid = grid[:max_points]
        exhaustive = False
    for t in grid:
        found = _scaled_search(K, H, N, l0 + t, bound)
        if found:
            res = PrincipalSearch(found[0], "principal")
            cache[I] = res
            return res
    status = "non-principal" if exhaustive else "not found within bound"
    res = PrincipalSearch(None, status)
    cache[I] = res
    return res


def principal_generator(I):
    """A generator of I, or None (see principal_generator_search for the status)."""
    return principal_generator_search(I).generator
