"""Enumeration of all elements of bounded Weil height in a number field.

The main routine pairs coprime integral ideals a, b of norm at most B,
finds a generator xi of a/b when it is principal, and multiplies each
generator by every unit of height at most B * max H(xi).  Candidates are
kept only after an exact height comparison.  A brute-force coordinate
scan serves as an independent check.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import exp, floor, log

import numpy as np

from .heights import height, height_norm_formula
from .ideals import Ideal, ideals_of_norm_up_to, principal_generator_search
from .units import log_vector, reduce_by_units, shifted_unit_vectors, unit_group, units_of_height_up_to

# relative margin for float prefilters; anything this close to the bound is decided exactly
_MARGIN = 1e-7


@dataclass
class EnumerationResult:
    field_label: str
    bound: Fraction
    elements: list
    completeness: str
    variant: str = "full"
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.elements)

    def as_set(self):
        return set(self.elements)

    def to_json(self):
        return {"field": self.field_label, "bound": str(self.bound), "variant": self.variant,
                "completeness": self.completeness, "count": len(self.elements),
                "stats": self.stats,
                "elements": [{"coords": [str(c) for c in x.coords], "height": float(height(x).approx(64))}
                             for x in self.elements]}


class _FloatEmbed:
    """Float conjugates of elements, for cheap prefilters only."""

    def __init__(self, K):
        r = np.array([complex(b.mid) for b in K.roots(64)])
        self.V = np.vander(r, K.degree, increasing=True) if K.degree > 1 else np.ones((1, 1))
        self.places = K.place_indices()

    def arch(self, x):
        v = self.V @ (np.array(x.num, dtype=float) / x.den)
        out = 1.0
        for i, loc in self.places:
            out *= max(1.0, abs(v[i]) ** loc)
        return out


def _height_at_most(x, B, approx=None):
    """Exact H(x) <= B, skipping the exact route when a float estimate is far from B."""
    if approx is not None:
        if approx > B * (1 + _MARGIN):
            return False
        if approx < B * (1 - _MARGIN):
            return True
    return height(x).compare(B) <= 0


def _completeness(U):
    if U.complete:
        return "complete"
    return "complete relative to supplied units"


def _pair_generator(a, b, cache):
    """Generator of the fractional ideal a / b, or the search status if none was found."""
    Nb = int(b.norm())
    bt = b.inverse() * Ideal.principal(a.K.element(Nb))  # integral since N(b) lies in b
    I = a * bt
    res = principal_generator_search(I)
    if res.generator is None:
        return None, res.status
    return res.generator / Nb, res.status


def _class_labels(K, L):
    """Assign each ideal of L a class representative and a generator of ideal / representative."""
    reps = []
    labels = {}
    for I in L:
        found = False
        for k, (C, NC, Ct) in enumerate(reps):
            res = principal_generator_search(I * Ct)
            if res.generator is not None:
                labels[I] = (k, res.generator / NC)
                found = True
                break
            if res.status != "non-principal":
                return None
        if not found:
            NC = int(I.norm())
            Ct = I.inverse() * Ideal.principal(K.element(NC))
            reps.append((I, NC, Ct))
            labels[I] = (len(reps) - 1, K.one())
    return labels


def enumerate_bounded_height(K, B, units=None, variant="full"):
    """All x in K with H_K(x) <= B, sorted by (height, coordinates).

    variant "full" tests every coprime pair of ideals for principality;
    "class-representatives" (quadratic fields) sorts ideals into classes first.
    """
    B = Fraction(B)
    t0 = time.perf_counter()
    U = units if units is not None else unit_group(K)
    label = _completeness(U)
    stats = {}
    if B < 1:
        return EnumerationResult(K.label, B, [], label, variant, {"L": 0, "G": 0, "B0": None, "U": 0})
    L = ideals_of_norm_up_to(K, floor(B))
    stats["L"] = len(L)
    t1 = time.perf_counter()

    labels = None
    if variant == "class-representatives":
        if K.degree != 2:
            variant = "full"
        else:
            labels = _class_labels(K, L)
            if labels is None:
                variant = "full"

    G = []
    unresolved = 0
    for a in L:
        for b in L:
            if not a.is_coprime(b):
                continue
            if labels is not None:
                (ka, ga), (kb, gb) = labels[a], labels[b]
                if ka != kb:
                    continue
                xi = ga / gb
            else:
                xi, status = _pair_generator(a, b, {})
                if xi is None:
                    if status != "non-principal":
                        unresolved += 1
                    continue
            G.append(reduce_by_units(U, xi))
    if unresolved:
        label = "incomplete: principality undecided for some ideal pairs"
    stats["G"] = len(G)
    t2 = time.perf_counter()

    hs = [height(xi) for xi in G]
    B0 = max((h.approx(64) for h in hs), default=1)
    B0_upper = Fraction(float(B0) * (1 + 1e-9)).limit_denominator(10 ** 12) + Fraction(1, 10 ** 9)
    stats["B0"] = float(B0)
    units_list = units_of_height_up_to(U, B * B0_upper)
    stats["U"] = len(units_list)
    t3 = time.perf_counter()

    fe = _FloatEmbed(K)
    out = {K.zero()}
    for xi in G:
        Nb = float(xi.denominator_ideal_norm())
        for u in units_list:
            x = u * xi
            if x in out:
                continue
            if _height_at_most(x, B, Nb * fe.arch(x)):
                out.add(x)
    t4 = time.perf_counter()
    stats["timings"] = {"ideals": t1 - t0, "generators": t2 - t1, "units": t3 - t2, "filter": t4 - t3}
    return EnumerationResult(K.label, B, sort_by_height(out), label, variant, stats)


def enumerate_with_denominator(K, b, B, units=None):
    """All x with denominator ideal exactly b and H_K(x) <= B.

    Units are enumerated in a shifted ball: with l = lambda(u xi), beta = log(B/N b)
    and L = log(N a / N b), the trace-zero part of l has squared length at most
    beta^2 + (beta - L)^2 - L^2/(r+1).
    """
    B = Fraction(B)
    U = units if units is not None else unit_group(K)
    if not b.is_integral():
        raise ValueError("denominator ideal must be integral")
    Nb = b.norm()
    if Nb > B or B < 1:
        return []
    out = set()
    if b.is_one():
        out.add(K.zero())
    places = K.place_indices()
    w = np.array([loc for _, loc in places], dtype=float)
    nplaces = len(places)
    fe = _FloatEmbed(K)
    beta = log(B / Nb)
    for a in ideals_of_norm_up_to(K, floor(B)):
        if not a.is_coprime(b):
            continue
        xi, _ = _pair_generator(a, b, {})
        if xi is None:
            continue
        Lg = log(a.norm() / Nb)
        xi = reduce_by_units(U, xi)
        lam = log_vector(xi)
        lam0 = lam - Lg / nplaces
        # lambda(u) lies in the trace-zero hyperplane for the unweighted sum
        R2 = beta ** 2 + (beta - Lg) ** 2 - Lg ** 2 / nplaces
        R2 = R2 * (1 + 1e-9) + 1e-9
        for x in shifted_unit_vectors(U, lam0, R2):
            u = U.element(x)
            for z in U.torsion_units():
                y = z * u * xi
                if _height_at_most(y, B, float(Nb) * fe.arch(y)):
                    out.add(y)
    return sort_by_height(out)


def sort_by_height(xs):
    def key(x):
        return (float(height(x).approx(64)), [Fraction(c) for c in x.coords])
    return sorted(set(xs), key=key)


# oracle

def default_box(K, B):
    """Coordinate bound (over the integral basis) for the numerators d*x scanned by the oracle.

    If H(x) <= B and d is the least positive integer with d*x integral, then d divides N(b),
    and |sigma_v(d x)| <= N(b) (B/N(b))^(1/n_v) <= B at every place.
    """
    n = K.degree
    if n == 1:
        return int(floor(B))
    W = np.array([[complex(b.mid) for b in w.embeddings(64)] for w in K.integral_basis])
    coord = np.abs(np.linalg.inv(W)).T @ np.full(n, float(B))
    return int(np.ceil(max(coord) * (1 + 1e-9)))


def brute_force_bounded_height(K, B, box=None):
    """Exhaustive scan of x = v/d, v integral with integral-basis coordinates in [-box, box], d <= B.

    Uses the norm-formula height for the exact test.
    """
    import itertools
    B = Fraction(B)
    if B < 1:
        return []
    box = default_box(K, B) if box is None else int(box)
    n = K.degree
    basis = K.integral_basis
    fe = _FloatEmbed(K)
    ib_float = np.array([fe.V @ (np.array(w.num, dtype=float) / w.den) for w in basis])
    places = K.place_indices()
    out = {K.zero()}
    rng = range(-box, box + 1)
    for d in range(1, floor(B) + 1):
        for v in itertools.product(rng, repeat=n):
            if not any(v):
                continue
            conj = np.array(v, dtype=float) @ ib_float / d
            arch = 1.0
            for i, loc in places:
                arch *= max(1.0, abs(conj[i]) ** loc)
            if arch > float(B) * (1 + _MARGIN):
                continue
            x = K.from_ib(list(v)) / d
            if x in out:
                continue
            if height_norm_formula(x).compare(B) <= 0:
                out.add(x)
    return sort_by_height(out)
