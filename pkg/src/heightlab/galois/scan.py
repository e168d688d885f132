"""Frobenius cycle-type statistics of integer polynomials and Galois-group diagnostics.

By Chebotarev, the factorization pattern of f mod p over unramified p is
distributed like the cycle types of the Galois group acting on the roots.
A candidate group is eliminated outright when it has no realization of the
right degree, or when a pattern is observed that none of its realizations
contains.  Otherwise it is scored by a chi-square goodness-of-fit p-value
against its best-fitting realization.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
import sympy

from .. import polys as P
from .groups import CANDIDATE_LABELS, candidate_realizations, cycle_type_distribution

DEFAULT_ALPHA = 1e-4


@dataclass
class CycleTypeHistogram:
    degree: int
    counts: Counter
    primes_used: int
    primes_skipped: int
    prime_range: tuple

    def to_json(self):
        return {"degree": self.degree, "primes_used": self.primes_used, "primes_skipped": self.primes_skipped,
                "prime_range": list(self.prime_range),
                "counts": {",".join(map(str, k)): v for k, v in sorted(self.counts.items())}}


def _scan_chunk(args):
    poly, primes = args
    counts = Counter()
    skipped = 0
    for p in primes:
        ct = P.fp_cycle_type(poly, p)
        if ct is None:
            skipped += 1
        else:
            counts[ct] += 1
    return counts, skipped


def first_primes(count):
    return list(sympy.primerange(2, sympy.prime(count) + 1))


def cycle_type_scan(poly, num_primes=10_000, threads=1, prime_bound=None):
    """Histogram of factorization patterns of poly modulo the first num_primes primes.

    With prime_bound set, all primes below it are used instead.  Primes where
    poly mod p is not squarefree or drops degree are skipped.  The result does
    not depend on the number of worker processes.
    """
    poly = [int(c) for c in poly]
    primes = list(sympy.primerange(2, prime_bound)) if prime_bound else first_primes(num_primes)
    threads = max(1, int(threads))
    if threads == 1:
        counts, skipped = _scan_chunk((poly, primes))
    else:
        chunks = [primes[i::threads] for i in range(threads)]
        counts, skipped = Counter(), 0
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for c, s in ex.map(_scan_chunk, [(poly, ch) for ch in chunks]):
                counts.update(c)
                skipped += s
    return CycleTypeHistogram(len(poly) - 1, counts, sum(counts.values()), skipped, (primes[0], primes[-1]))


def chi_square_pvalue(observed, expected_probs):
    """Pearson chi-square p-value; cells with expected count below 5 are pooled."""
    n = sum(observed.values())
    cells = []
    pool_o, pool_e = 0, 0.0
    for k, prob in expected_probs.items():
        e = float(prob) * n
        o = observed.get(k, 0)
        if e < 5:
            pool_o += o
            pool_e += e
        else:
            cells.append((o, e))
    if pool_e > 0:
        cells.append((pool_o, pool_e))
    stat = sum((o - e) ** 2 / e for o, e in cells if e > 0)
    dof = len(cells) - 1
    if dof <= 0:
        return 1.0, stat, dof
    p = mpmath.gammainc(mpmath.mpf(dof) / 2, mpmath.mpf(stat) / 2, regularized=True)
    return float(p), stat, dof


@dataclass
class CandidateVerdict:
    label: str
    status: str  # "consistent", "eliminated", "rejected-statistically"
    reason: str
    best_construction: str = ""
    pvalue: float = 0.0
    details: list = field(default_factory=list)


def compare_group_candidates(hist, labels=CANDIDATE_LABELS, alpha=DEFAULT_ALPHA):
    """Score every candidate group against an observed cycle-type histogram."""
    reals = [r for r in candidate_realizations() if r.degree == hist.degree]
    out = []
    for label in labels:
        mine = [r for r in reals if r.label == label]
        if not mine:
            out.append(CandidateVerdict(label, "eliminated", f"no realization of degree {hist.degree} in the catalogue"))
            continue
        details = []
        for r in mine:
            dist = cycle_type_distribution(r)
            impossible = sorted(k for k in hist.counts if k not in dist)
            if impossible:
                details.append((r.construction, None, f"observed patterns {impossible} do not occur"))
                continue
            p, stat, dof = chi_square_pvalue(hist.counts, dist)
            details.append((r.construction, p, f"chi2 = {stat:.2f} on {dof} dof"))
        scored = [d for d in details if d[1] is not None]
        if not scored:
            out.append(CandidateVerdict(label, "eliminated", details[0][2], details=details))
            continue
        best = max(scored, key=lambda d: d[1])
        status = "consistent" if best[1] >= alpha else "rejected-statistically"
        out.append(CandidateVerdict(label, status, best[2], best[0], best[1], details))
    return out


def consistent_labels(verdicts):
    return [v.label for v in verdicts if v.status == "consistent"]
