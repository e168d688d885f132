"""Unit groups, log lattices and enumeration of units of bounded height.

Quadratic fields get certified fundamental units.  In higher degree units
come from a supplied file or from a heuristic search: elements of norm
+-1 among short vectors of rescaled Minkowski lattices, plus quotients of
elements generating the same principal ideal.  The group they generate is
saturated at small primes with power-residue characters at degree one
primes, followed by an exact root test.  The flag on the group says which
route produced it.
"""
from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import exp, gcd, log, sqrt

import numpy as np
import sympy
from mpmath import mp

from .heights import height, log_embedding
from .linalg import fincke_pohst, hnf_with_transform, lll_gram, nullspace_mod_p
from .numfield import NFElement


@dataclass
class LogLattice:
    """lambda-images of a unit basis, with the place weights n_v built in."""
    basis: list
    prec: int = 64

    def basis_float(self):
        return [[float(v) for v in row] for row in self.basis]

    def gram(self):
        B = np.array(self.basis_float())
        return B @ B.T

    def row_sums(self):
        return [float(sum(row)) for row in self.basis]


@dataclass
class UnitGroup:
    K: object
    torsion: NFElement
    torsion_order: int
    units: list
    certified: str  # "certified-fundamental" | "heuristic" | "supplied"
    notes: list = field(default_factory=list)

    @property
    def rank(self):
        return len(self.units)

    @property
    def complete(self):
        return self.certified in ("certified-fundamental", "supplied-certified")

    def log_lattice(self, prec=64):
        key = ("loglat", prec)
        cache = self.K._cache.setdefault("unit_logs", {})
        if key not in cache or cache[key][0] is not self:
            cache[key] = (self, LogLattice([log_embedding(u, prec) for u in self.units], prec))
        return cache[key][1]

    def torsion_units(self):
        return [self.torsion ** k for k in range(self.torsion_order)]

    def element(self, exps):
        out = self.K.one()
        for u, e in zip(self.units, exps):
            if e:
                out = out * _power_cached(self, u, e)
        return out

    def to_json(self):
        return {"field_label": self.K.label,
                "units": [[str(c) for c in u.coords] for u in self.units],
                "torsion": [str(c) for c in self.torsion.coords],
                "torsion_order": self.torsion_order,
                "certified": self.certified == "certified-fundamental" or self.certified == "supplied-certified",
                "flag": self.certified}


def log_vector(x):
    """Float log embedding (n_v log|x|_v), with the working precision raised until the conjugates are tight."""
    prec = 64
    while True:
        emb = x.embeddings(prec)
        if all(float(b.rad) < 1e-9 * abs(complex(b.mid)) for b in emb):
            return np.array([loc * log(abs(complex(emb[i].mid))) for i, loc in x.K.place_indices()])
        prec *= 2
        if prec > 1 << 14:
            raise ArithmeticError("could not separate the conjugates from zero")


def reduce_by_units(U, xi, rounds=3):
    """A unit multiple of xi whose log vector is close to the balanced point (smaller height)."""
    if U.rank == 0:
        return xi
    w = np.array([loc for _, loc in U.K.place_indices()], dtype=float)
    B = np.array(U.log_lattice().basis_float())
    for _ in range(rounds):
        lam = log_vector(xi)
        lam0 = lam - w * lam.sum() / w.sum()
        c, *_ = np.linalg.lstsq(B.T, -lam0, rcond=None)
        x = [int(round(t)) for t in c]
        if not any(x):
            break
        xi = xi * U.element(x)
    return xi


def _power_cached(U, u, e):
    cache = U.K._cache.setdefault("unit_powers", {})
    key = (u.num, u.den, e)
    if key not in cache:
        if len(cache) > 20000:
            cache.clear()
        cache[key] = u ** e
    return cache[key]


# torsion

def torsion_subgroup(K):
    """(generator, order) of the roots of unity in K."""
    r1, r2 = K.signature
    if r1 > 0:
        return K.element(-1), 2
    # roots of unity have T2 = n; enumerate the integral lattice
    M = K.minkowski_float
    G = M @ M.T
    best = (K.element(-1), 2)
    for x in fincke_pohst(G, K.degree * (1 + 1e-9)):
        if not any(x):
            continue
        z = K.from_ib(list(x))
        if abs(z.norm()) != 1:
            continue
        k = _root_of_unity_order(z, 4 * K.degree * K.degree)
        if k and k > best[1]:
            best = (z, k)
    return best


def _root_of_unity_order(z, limit):
    y = z
    for k in range(1, limit + 1):
        if y == 1:
            return k
        y = y * z
    return None


# group building

def _logs(units, prec=64):
    return np.array([[float(v) for v in log_embedding(u, prec)] for u in units]) if units else np.zeros((0, 0))


def _lll_units(K, units):
    """LLL-reduce a list of independent units with respect to their log vectors."""
    if len(units) <= 1:
        return units
    L = _logs(units)
    U = lll_gram(L @ L.T)
    out = []
    for row in U:
        x = K.one()
        for u, e in zip(units, row):
            if e:
                x = x * u ** e
        out.append(x)
    return out


def _rank_of(logs, tol=1e-6):
    if len(logs) == 0:
        return 0
    s = np.linalg.svd(np.array(logs)[:, :-1], compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))


def _add_unit(K, basis, u, max_den=20000):
    """Enlarge the group generated by basis (independent units) by u; returns the new basis."""
    if basis and _rank_of(np.vstack([_logs(basis), _logs([u])])) > len(basis):
        return basis + [u]
    if not basis:
        lu = _logs([u])
        return [u] if np.linalg.norm(lu) > 1e-8 else []
    B = _logs(basis)[:, :-1]
    t = _logs([u])[0, :-1]
    c, *_ = np.linalg.lstsq(B.T, t, rcond=None)
    for d in range(1, max_den + 1):
        dc = d * c
        if np.max(np.abs(dc - np.round(dc))) < 1e-6 * max(1.0, np.max(np.abs(dc))):
            break
    else:
        return basis
    if d == 1:
        return basis
    r = len(basis)
    rows = [[d * int(i == j) for j in range(r)] for i in range(r)] + [[int(round(x)) for x in dc]]
    H, T, _ = hnf_with_transform(rows)
    # new basis element i = prod basis_j^{T_ij} * u^{T_i,r}, a d-th root combination
    new = []
    for trow in T[:r]:
        x = K.one()
        for b, e in zip(basis + [u], trow):
            if e:
                x = x * b ** e
        new.append(x)
    # the HNF rows correspond to d * (new element logs); check they are units of the right size
    return _lll_units(K, new)


def _degree_one_primes(K, p, count, skip):
    """Pairs (q, r) with q = 1 mod p prime, r a simple root of the defining polynomial mod q."""
    out = []
    q = 1
    fpoly = list(K.poly)
    while len(out) < count:
        q += p
        if not sympy.isprime(q) or q in skip:
            continue
        if K.index % q == 0:
            continue
        roots = [t for t in _poly_roots_mod(fpoly, q)]
        for r in roots:
            deriv = sum(i * fpoly[i] * pow(r, i - 1, q) for i in range(1, len(fpoly))) % q
            if deriv:
                out.append((q, r))
                break
    return out


def _poly_roots_mod(f, q):
    from .polys import fp_factor
    if q < 200:
        return [t for t in range(q) if sum(c * pow(t, i, q) for i, c in enumerate(f)) % q == 0]
    return sorted((-g[0]) % q for g, _ in fp_factor(f, q) if len(g) == 2)


def _reduce_at(x, q, r):
    num = sum(c * pow(r, i, q) for i, c in enumerate(x.num)) % q
    if x.den % q == 0:
        return None
    return num * pow(x.den, -1, q) % q


def _discrete_log_mu(y, p, q, g):
    """k with y = g^k for y in mu_p (g a generator of mu_p in F_q)."""
    z = 1
    for k in range(p):
        if z == y:
            return k
        z = z * g % q
    return None


def saturate(K, units, torsion, torsion_order, primes=(2, 3, 5, 7), rng=None):
    """p-saturate the group <torsion, units> for the given primes; returns (units, notes)."""
    rng = rng or random.Random(0)
    notes = []
    for p in primes:
        while True:
            gens = list(units) + ([torsion] if torsion_order % p == 0 else [])
            if not gens:
                break
            chars = _degree_one_primes(K, p, len(gens) + 12, set())
            rows = []
            for q, r in chars:
                g = None
                # generator of mu_p in F_q
                for a in range(2, q):
                    h = pow(a, (q - 1) // p, q)
                    if h != 1:
                        g = h
                        break
                row = []
                for u in gens:
                    y = _reduce_at(u, q, r)
                    if y is None:
                        row = None
                        break
                    row.append(_discrete_log_mu(pow(y, (q - 1) // p, q), p, q, g))
                if row is not None:
                    rows.append(row)
            # vectors a with sum a_i * chi(u_i) = 0 for every character
            M = [[rows[k][i] for k in range(len(rows))] for i in range(len(gens))]
            ker = nullspace_mod_p(M, p)
            found = False
            for a in ker:
                if not any(a[:len(units)]):
                    continue
                z = K.one()
                for u, e in zip(gens, a):
                    if e:
                        z = z * u ** e
                root = nth_root(z, p)
                if root is not None:
                    # replace a unit with nonzero coefficient by the root
                    i = next(i for i in range(len(units)) if a[i] % p)
                    units = units[:i] + [root] + units[i + 1:]
                    notes.append(f"saturated at {p}")
                    units = _lll_units(K, units)
                    found = True
                    break
            if not found:
                break
    return units, notes


def nth_root(z, k):
    """An element y of K with y^k = z, or None (exact)."""
    K = z.K
    if z.is_zero():
        return z
    c = z.ib_coords()
    D = 1
    for q in c:
        D = D * q.denominator // gcd(D, q.denominator)
    # (D y)^k = D^k z is integral, so D y is integral
    zz = z * Fraction(D) ** k
    emb = zz.embeddings(256)
    from mpmath import mpf, mpc
    import itertools
    import mpmath
    with mp.workprec(256):
        cand_lists = []
        for i, loc in K.place_indices():
            v = emb[i].mid
            if loc == 1:
                v = mpmath.re(v)
                if k % 2 == 0:
                    if v < 0:
                        return None
                    base = mpmath.root(v, k)
                    cand_lists.append([base, -base])
                else:
                    cand_lists.append([mpmath.sign(v) * mpmath.root(abs(v), k)])
            else:
                base = mpmath.root(mpc(v), k)
                zeta = mpmath.exp(2j * mpmath.pi / k)
                cand_lists.append([base * zeta ** j for j in range(k)])
        num, den = K.integral_basis_matrix
        W = np.array([[complex(b.mid) for b in w.embeddings(64)] for w in K.integral_basis])
        places = K.place_indices()
        total = 1
        for cl in cand_lists:
            total *= len(cl)
        if total > 5000:
            return None
        for combo in itertools.product(*cand_lists):
            target = []
            for (i, loc), val in zip(places, combo):
                target.append(complex(val))
            # solve sum_j y_j w_j(sigma_i) = target_i over the places (real and imaginary parts)
            A, bvec = [], []
            for (i, loc), t in zip(places, target):
                A.append(W[:, i].real)
                bvec.append(t.real)
                if loc == 2:
                    A.append(W[:, i].imag)
                    bvec.append(t.imag)
            try:
                y = np.linalg.solve(np.array(A), np.array(bvec))
            except np.linalg.LinAlgError:
                continue
            yi = [int(round(v)) for v in y]
            if np.max(np.abs(y - np.array(yi))) > 1e-3:
                continue
            cand = K.from_ib(yi)
            if cand ** k == zz:
                return cand / D
    return None


def _collect_units(K, rng, trials, rho=1.0, scale_steps=(0.5, 1, 2, 4, 8)):
    from .ideals import _scaled_search
    n = K.degree
    places = len(K.place_indices())
    weights = np.array([loc for _, loc in K.place_indices()], dtype=float)
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    found = []
    for s in scale_steps:
        for _ in range(trials):
            t = np.array([rng.gauss(0, 1) for _ in range(places)])
            t = t - weights * (t.sum() / weights.sum())
            t = t / max(np.linalg.norm(t), 1e-9) * s
            for x in _scaled_search(K, H, 1, t, n * exp(2 * rho), want_units=True, limit=5000):
                found.append(x)
    return found


def heuristic_units(K, seed=0, trials=12):
    """Units of K found by lattice search and saturated at small primes (not certified)."""
    rng = random.Random(seed)
    r = K.unit_rank
    torsion, tord = torsion_subgroup(K)
    basis = []
    rounds = 0
    while rounds < 6:
        rounds += 1
        cands = _collect_units(K, rng, trials * rounds)
        cands.sort(key=lambda u: float(np.linalg.norm(_logs([u])[0])))
        for u in cands:
            if len(basis) == r:
                break
            nb = _add_unit(K, basis, u)
            if len(nb) > len(basis):
                basis = nb
        if len(basis) == r:
            # fold in the remaining candidates to enlarge the index
            for u in cands[:60]:
                basis = _add_unit(K, basis, u)
            break
    if len(basis) < r:
        return UnitGroup(K, torsion, tord, basis, "heuristic", ["rank deficient"])
    basis = _lll_units(K, basis)
    basis, notes = saturate(K, basis, torsion, tord)
    return UnitGroup(K, torsion, tord, basis, "heuristic", notes)


def unit_group(K, units=None, certified=None):
    """Unit group of K: certified for quadratic fields, supplied or heuristic otherwise."""
    if units is not None:
        torsion, tord = torsion_subgroup(K)
        flag = "supplied-certified" if certified else "supplied"
        U = UnitGroup(K, torsion, tord, [K.element(u) for u in units], flag)
        if any(abs(u.norm()) != 1 for u in U.units):
            raise ValueError("supplied element is not a unit")
        if _rank_of(_logs(U.units)) != len(U.units) or len(U.units) != K.unit_rank:
            raise ValueError("supplied units are dependent or of the wrong count")
        K._cache["unit_group"] = U
        return U
    if "unit_group" in K._cache:
        return K._cache["unit_group"]
    if K.degree == 1:
        U = UnitGroup(K, K.element(-1), 2, [], "certified-fundamental")
    elif K.degree == 2:
        D = K.discriminant
        torsion, tord = torsion_subgroup(K)
        if D > 0:
            from .quadratic import fundamental_unit_quadratic
            eps = fundamental_unit_quadratic(D)
            U = UnitGroup(K, torsion, tord, [eps], "certified-fundamental")
        else:
            U = UnitGroup(K, torsion, tord, [], "certified-fundamental")
    else:
        U = heuristic_units(K)
    K._cache["unit_group"] = U
    return U


def load_units_file(path, K=None):
    """Read {"field_label", "units": [[coords...]], "certified"} and install it on the field."""
    with open(path) as fh:
        obj = json.load(fh)
    if K is None:
        from .numfield import field_from_label
        K = field_from_label(obj["field_label"])
    elif obj.get("field_label") not in (None, K.label):
        raise ValueError(f"units file is for {obj['field_label']}, not {K.label}")
    units = [[Fraction(c) for c in u] for u in obj["units"]]
    return unit_group(K, units=units, certified=bool(obj.get("certified", False)))


# enumeration

def shifted_unit_vectors(U, center, radius_sq):
    """Exponent vectors x with |sum x_i lambda(u_i) + center|^2 <= radius_sq (floats, small slack)."""
    r = U.rank
    if r == 0:
        if float(np.dot(center, center)) <= radius_sq * (1 + 1e-9) + 1e-9:
            yield ()
        return
    B = np.array(U.log_lattice().basis_float())
    G = B @ B.T
    t = np.array(center, dtype=float)
    c = -np.linalg.solve(G, B @ t)
    resid = t + c @ B
    rem = radius_sq - float(resid @ resid)
    if rem < -1e-9:
        return
    Umat = lll_gram(G)
    Ua = np.array(Umat, dtype=float)
    G2 = Ua @ G @ Ua.T
    c2 = np.linalg.solve(Ua.T, c)
    slack = 1e-9 * max(1.0, radius_sq) + 1e-9
    for y in fincke_pohst(G2, max(rem, 0.0) + slack, center=c2):
        x = [sum(y[i] * Umat[i][j] for i in range(r)) for j in range(r)]
        yield tuple(x)


def units_of_height_up_to(U, B):
    """All units with H_K(u) <= B (torsion multiples included), sorted by (height, coordinates).

    Log vectors are enumerated in the ball |lambda(u)|^2 <= 2 (log B)^2 and each
    candidate is filtered exactly.
    """
    B = Fraction(B)
    if B < 1:
        warnings.warn("bound below 1: no units")
        return []
    R2 = 2 * log(B) ** 2 if B > 1 else 0.0
    places = len(U.K.place_indices())
    out = []
    for x in shifted_unit_vectors(U, np.zeros(places), R2):
        u = U.element(x)
        if height(u) <= B:
            for z in U.torsion_units():
                out.append(z * u)
    return sort_elements(out)


def sort_elements(xs):
    def key(x):
        return (float(height(x).approx(64)), [Fraction(c) for c in x.coords])
    return sorted(set(xs), key=key)
