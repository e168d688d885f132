"""Root discriminants along the 2-power tower over the sqrt 2-torsion field for D = 1997."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath


@dataclass(frozen=True)
class TowerValue:
    r: int
    s: int
    delta: object
    below_threshold: bool


def rootdisc_tower_1997(r, s, prec=64):
    """delta = 2 sqrt(1997) 2^(s / 2^(r+1)) and whether delta < 4 sqrt(1997).

    The comparison is exact: it is 2^(s / 2^(r+1)) < 2, i.e. s < 2^(r+1).
    """
    if r < 0 or s < 0:
        raise ValueError("r and s must be nonnegative")
    exponent = Fraction(s, 2 ** (r + 1))
    with mpmath.workprec(prec):
        delta = 2 * mpmath.sqrt(1997) * mpmath.mpf(2) ** (mpmath.mpf(exponent.numerator) / exponent.denominator)
    return TowerValue(r, s, delta, exponent < 1)


def tower_cases(r_max=3, s_max=None):
    """All (r, s) with r <= r_max (and s <= s_max) for which delta stays below 4 sqrt(1997)."""
    out = []
    for r in range(r_max + 1):
        limit = s_max if s_max is not None else 2 ** (r + 1) + 4
        for s in range(limit + 1):
            if rootdisc_tower_1997(r, s).below_threshold:
                out.append((r, s))
    return out
