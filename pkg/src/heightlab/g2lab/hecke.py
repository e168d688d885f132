"""Point counts from Hecke eigenvalues and the two-torsion parity test."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

# norm forms on Z[e]: e = (1 + sqrt 5)/2 or e = sqrt 2
_NORM = {
    "sqrt5": lambda c0, c1: c0 * c0 + c0 * c1 - c1 * c1,
    "sqrt2": lambda c0, c1: c0 * c0 - 2 * c1 * c1,
}
_REAL = {
    "sqrt5": ((1 + 5 ** 0.5) / 2, (1 - 5 ** 0.5) / 2),
    "sqrt2": (2 ** 0.5, -(2 ** 0.5)),
}


@dataclass(frozen=True)
class HeckeEigenvalueRecord:
    prime: tuple  # generator of the prime as (a, b) = a + b w
    Np: int
    a: tuple  # (c0, c1) = c0 + c1 e
    coeff_field: str = "sqrt5"

    def __post_init__(self):
        if self.coeff_field not in _NORM:
            raise ValueError(f"unknown coefficient field {self.coeff_field}")
        for e in _REAL[self.coeff_field]:
            val = self.a[0] + self.a[1] * e
            # Weil bound |a| <= 2 sqrt(Np), with slack for rounding
            if val * val > 4 * self.Np + 1e-9:
                raise ValueError(f"eigenvalue {self.a} violates the Weil bound at norm {self.Np}")

    def conjugate_values(self):
        return [self.a[0] + self.a[1] * e for e in _REAL[self.coeff_field]]


def point_count_from_eigenvalue(rec):
    """N_{K_f/Q}(N p + 1 - a_p), the number of points of the reduction of A at p."""
    c0 = rec.Np + 1 - rec.a[0]
    c1 = -rec.a[1]
    n = _NORM[rec.coeff_field](c0, c1)
    if n <= 0:
        raise ArithmeticError("point count must be positive")
    return n


def two_torsion_obstruction(counts):
    """True if some count is odd (no rational 2-torsion), False if all even, None if no data."""
    counts = list(counts)
    if not counts:
        return None
    return any(c % 2 for c in counts)
