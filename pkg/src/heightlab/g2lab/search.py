"""Search for candidate 2-torsion polynomials h' over F from elements of bounded height in K.

Stage 1 lists the integral alpha in K, not in F, with H_K(alpha) <= B.  Each
relative minimal polynomial h_alpha must pass a ramification test: at every
prime of F outside the allowed support, disc(h_alpha) has even valuation.
This is necessary for F[x]/h_alpha to be unramified there, since the
polynomial discriminant is the field discriminant times a square.

Stage 2 forms h' = h_alpha h_alpha' from two distinct survivors (paired mode)
or takes h' = h_alpha (single mode), and builds the curve y^2 = h'(x).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import sympy

from .. import polys as P
from ..enumerator import enumerate_with_denominator
from ..heights import height
from ..ideals import Ideal, prime_ideals_above
from ..units import unit_group
from .curves import GenusTwoModel


@dataclass
class Candidate:
    alphas: tuple
    heights: tuple
    h_prime: list
    model: GenusTwoModel

    @property
    def height(self):
        return max(self.heights)


@dataclass
class SearchResult:
    mode: str
    bound: object
    stage1: list  # (alpha, height, h_alpha) passing the ramification test
    candidates: list
    exhaustive: bool
    stats: dict = field(default_factory=dict)

    @property
    def label(self):
        return "exhaustive" if self.exhaustive else "non-exhaustive (heuristic units)"

    def alphas(self):
        return [a for a, _, _ in self.stage1]


def odd_valuation_primes(d, support):
    """Rational primes q outside support below which the element d of F has odd valuation."""
    F = d.K
    n = abs(sympy.Rational(str(d.norm())))
    bad = set()
    for q in sympy.factorint(int(n.p * n.q)):
        if q in support:
            continue
        if F.degree == 1:
            if sympy.multiplicity(q, n.p) % 2 or sympy.multiplicity(q, n.q) % 2:
                bad.add(q)
            continue
        for Pq in prime_ideals_above(F, q):
            if Pq.valuation_element(d) % 2:
                bad.add(q)
    return bad


def passes_support(poly, support):
    d = P.discriminant(poly)
    if (d == 0) if not hasattr(d, "is_zero") else d.is_zero():
        return False
    return not odd_valuation_primes(d, support)


def candidate_pair_search(ext, mode="paired", B=100, support=(2,), units=None, max_pairs=20000):
    """Candidates h' built from elements of K of height at most B (see module docstring).

    Results are sorted by height; they are labeled non-exhaustive when the
    unit group of K is only heuristic.
    """
    if mode not in ("paired", "single"):
        raise ValueError("mode must be 'paired' or 'single'")
    support = set(support)
    K = ext.K
    U = units if units is not None else unit_group(K)
    t0 = time.perf_counter()
    elems = enumerate_with_denominator(K, Ideal.unit(K), B, units=U)
    t1 = time.perf_counter()
    stage1 = []
    seen_polys = {}
    for a in elems:
        if a.is_zero():
            continue
        # the relative degree cannot exceed the absolute one
        m = a.minpoly()
        if len(m) - 1 < ext.degree:
            continue
        h = ext.minpoly_relative(a)
        if len(h) - 1 != ext.degree:
            continue
        key = tuple(h)
        if key not in seen_polys:
            seen_polys[key] = passes_support(h, support)
        if seen_polys[key]:
            stage1.append((a, height(a), h))
    t2 = time.perf_counter()
    stage1.sort(key=lambda t: (float(t[1].approx(64)), [str(c) for c in t[0].coords]))

    candidates = []
    if mode == "single":
        done = set()
        for a, H, h in stage1:
            if tuple(h) in done:
                continue
            done.add(tuple(h))
            candidates.append(Candidate((a,), (float(H.approx(64)),), h, _model(ext, h)))
    else:
        by_poly = {}
        for a, H, h in stage1:
            by_poly.setdefault(tuple(h), (a, H, h))
        reps = sorted(by_poly.values(), key=lambda t: float(t[1].approx(64)))
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                if len(candidates) >= max_pairs:
                    break
                (a, Ha, ha), (b, Hb, hb) = reps[i], reps[j]
                hp = P.mul(ha, hb)
                candidates.append(Candidate((a, b), (float(Ha.approx(64)), float(Hb.approx(64))), hp,
                                            _model(ext, hp)))
        candidates.sort(key=lambda c: (c.height, min(c.heights)))
    t3 = time.perf_counter()
    stats = {"enumerated": len(elems), "stage1": len(stage1),
             "timings": {"enumerate": t1 - t0, "filter": t2 - t1, "pairs": t3 - t2}}
    return SearchResult(mode, B, stage1, candidates, U.complete, stats)


def _model(ext, h):
    """The curve y^2 = h(x) as y^2 + Q y = P with Q = 0."""
    return GenusTwoModel(list(h), [ext.F.zero()], ext.F)
