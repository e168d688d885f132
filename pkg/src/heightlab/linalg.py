"""Exact and floating linear algebra for small lattices.

Matrices are lists of rows.  Integer lattices are given by generating rows
and reduced to Hermite normal form (upper triangular, positive pivots,
entries above a pivot reduced into [0, pivot)).  LLL and Fincke-Pohst work
on floating Gram matrices and return integer coefficient vectors.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import numpy as np


# rational matrices

def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vec_mat(v, A):
    n = len(A[0]) if A else 0
    out = [0] * n
    for c, row in zip(v, A):
        if c:
            for j in range(n):
                out[j] += c * row[j]
    return out


def mat_inv(A):
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def det_int(A):
    """Determinant of an integer matrix (Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def charpoly_int(A):
    """Characteristic polynomial det(xI - A) of an integer matrix, lowest degree first (Berkowitz)."""
    n = len(A)
    if n == 0:
        return [1]
    vect = [1, -A[0][0]]
    for r in range(1, n):
        R = [A[r][j] for j in range(r)]
        C = [A[i][r] for i in range(r)]
        S = [row[:r] for row in A[:r]]
        a = A[r][r]
        Q = [C]
        for _ in range(r - 1):
            Q.append([sum(S[i][j] * Q[-1][j] for j in range(r)) for i in range(r)])
        T = [1, -a] + [-sum(R[j] * q[j] for j in range(r)) for q in Q]
        new = []
        for i in range(r + 2):
            new.append(sum(T[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(T)))
        vect = new
    return vect[::-1]


# integer lattices

def hnf(rows, ncols=None, modulus=None):
    """Hermite normal form basis of the row lattice (list of nonzero rows).

    With ``modulus`` the lattice is assumed to contain modulus * Z^n and
    entries are reduced along the way.
    """
    A = [list(map(int, r)) for r in rows]
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if modulus:
        A += [[modulus if i == j else 0 for j in range(n)] for i in range(n)]
    A = [r for r in A if any(r)]
    out = []
    for col in range(n):
        piv_rows = [r for r in A if r[col] != 0]
        rest = [r for r in A if r[col] == 0]
        if not piv_rows:
            A = rest
            continue
        while len(piv_rows) > 1:
            piv_rows.sort(key=lambda r: abs(r[col]))
            p = piv_rows[0]
            nxt = [p]
            for r in piv_rows[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if modulus:
                    r = r[:col + 1] + [x % modulus for x in r[col + 1:]]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            piv_rows = nxt
        p = piv_rows[0]
        if p[col] < 0:
            p = [-x for x in p]
        if modulus:
            p = p[:col + 1] + [x % modulus for x in p[col + 1:]]
        out.append(p)
        A = rest
    # reduce above pivots
    for i in range(len(out)):
        piv_col = next(j for j in range(n) if out[i][j] != 0)
        pv = out[i][piv_col]
        for k in range(i):
            q = out[k][piv_col] // pv
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], out[i])]
    return out


def hnf_with_transform(rows):
    """HNF of the rows together with an integer U such that U*rows = [H; 0]."""
    m = len(rows)
    n = len(rows[0])
    aug = [list(map(int, r)) + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    H = []
    A = aug
    for col in range(n):
        piv_rows = [r for r in A if r[col] != 0]
        rest = [r for r in A if r[col] == 0]
        if not piv_rows:
            continue
        while len(piv_rows) > 1:
            piv_rows.sort(key=lambda r: abs(r[col]))
            p = piv_rows[0]
            nxt = [p]
            for r in piv_rows[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[col] != 0 else rest).append(r)
            piv_rows = nxt
        p = piv_rows[0]
        if p[col] < 0:
            p = [-x for x in p]
        H.append(p)
        A = rest
    for i in range(len(H)):
        piv_col = next(j for j in range(n) if H[i][j] != 0)
        for k in range(i):
            q = H[k][piv_col] // H[i][piv_col]
            if q:
                H[k] = [a - q * b for a, b in zip(H[k], H[i])]
    kernel = [r[n:] for r in A]
    return [r[:n] for r in H], [r[n:] for r in H], kernel


def kernel_mod(M, modulus):
    """Basis (HNF) of {y in Z^n : y*M = 0 mod modulus} for an n x m integer matrix M."""
    n = len(M)
    m = len(M[0]) if M else 0
    rows = [list(M[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    rows += [[modulus if i == j else 0 for j in range(m)] + [0] * n for i in range(m)]
    H = hnf(rows, m + n)
    return hnf([r[m:] for r in H if not any(r[:m])], n)


def lattice_contains(H, v):
    """Membership of v in the lattice with HNF basis H."""
    v = list(map(int, v))
    for row in H:
        pc = next(j for j, x in enumerate(row) if x)
        if v[pc] % row[pc]:
            return False
        q = v[pc] // row[pc]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def hnf_det(H):
    d = 1
    for row in H:
        d *= next(x for x in row if x)
    return d


def nullspace_mod_p(M, p):
    """Basis of {y in F_p^n : y*M = 0} for an n x m matrix M."""
    n = len(M)
    m = len(M[0]) if M else 0
    # transpose: solve M^T y = 0
    A = [[M[i][j] % p for i in range(n)] for j in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        y = [0] * n
        y[fc] = 1
        for i, pc in enumerate(pivots):
            y[pc] = (-A[i][fc]) % p
        basis.append(y)
    return basis


def rank_mod_p(rows, p):
    A = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def row_basis_mod_p(rows, p):
    """Reduced echelon basis of the F_p-span of rows."""
    A = [[x % p for x in r] for r in rows]
    out = []
    ncols = len(A[0]) if A else 0
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[rank])]
        rank += 1
    return A[:rank]


# LLL and short vector enumeration on floating Gram matrices

def lll_gram(G, delta=0.99):
    """LLL-reduce a positive definite Gram matrix; returns unimodular U (rows = new basis in old coordinates)."""
    G = np.array(G, dtype=float)
    k = G.shape[0]
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    if k <= 1:
        return U

    def gso(G):
        mu = np.zeros((k, k))
        B = np.zeros(k)
        for i in range(k):
            for j in range(i):
                mu[i, j] = (G[i, j] - sum(mu[j, l] * mu[i, l] * B[l] for l in range(j))) / B[j]
            B[i] = G[i, i] - sum(mu[i, l] ** 2 * B[l] for l in range(i))
        return mu, B

    def row_op(i, j, q):
        # b_i -= q b_j
        nonlocal G
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]
        G[i, :] -= q * G[j, :]
        G[:, i] -= q * G[:, j]

    def swap(i, j):
        nonlocal G
        U[i], U[j] = U[j], U[i]
        G[[i, j], :] = G[[j, i], :]
        G[:, [i, j]] = G[:, [j, i]]

    i = 1
    guard = 0
    while i < k:
        guard += 1
        if guard > 100000:
            break
        mu, B = gso(G)
        for j in range(i - 1, -1, -1):
            q = int(round(mu[i, j]))
            if q:
                row_op(i, j, q)
                mu, B = gso(G)
        if B[i] < (delta - mu[i, i - 1] ** 2) * B[i - 1]:
            swap(i, i - 1)
            i = max(i - 1, 1)
        else:
            i += 1
    return U


def lll_basis(S, delta=0.99, passes=12):
    """LLL on the rows of a float basis; the Gram matrix is recomputed from the basis each pass.

    Returns (U, S') with S' = U S.  Repeating passes keeps badly scaled bases stable.
    """
    S = np.array(S, dtype=float)
    k = S.shape[0]
    total = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(passes):
        # scale to unit size so the Gram entries stay representable
        G = S @ S.T
        U = lll_gram(G / max(np.max(np.abs(G)), 1e-300), delta)
        if all(U[i][j] == int(i == j) for i in range(k) for j in range(k)):
            break
        Ua = np.array(U, dtype=float)
        S = Ua @ S
        total = [[sum(U[i][l] * total[l][j] for l in range(k)) for j in range(k)] for i in range(k)]
    return total, S


def fincke_pohst(G, bound, center=None, limit=None):
    """Yield integer vectors x with (x - c)^T G (x - c) <= bound.

    G is a positive definite Gram matrix (floats); a small relative slack is
    the caller's responsibility.  ``limit`` caps the number of points.
    """
    G = np.array(G, dtype=float)
    k = G.shape[0]
    c = np.zeros(k) if center is None else np.array(center, dtype=float)
    if k == 0:
        yield ()
        return
    # q-form: Q(x) = sum_i q_ii (x_i - c_i + sum_{j>i} q_ij (x_j - c_j))^2
    q = np.zeros((k, k))
    A = G.copy()
    for i in range(k):
        q[i, i] = A[i, i]
        for j in range(i + 1, k):
            q[i, j] = A[i, j] / A[i, i]
        for j in range(i + 1, k):
            for l in range(j, k):
                A[j, l] -= q[i, j] * q[i, l] * A[i, i]
                A[l, j] = A[j, l]
    if np.any(np.diag(q) <= 0):
        raise ValueError("Gram matrix is not positive definite")
    x = [0] * k
    count = 0

    def rec(i, remaining):
        nonlocal count
        shift = c[i] - sum(q[i, j] * (x[j] - c[j]) for j in range(i + 1, k))
        r = remaining / q[i, i]
        if r < 0:
            return
        half = np.sqrt(r)
        lo = int(np.ceil(shift - half - 1e-12))
        hi = int(np.floor(shift + half + 1e-12))
        for v in range(lo, hi + 1):
            x[i] = v
            rem_i = remaining - q[i, i] * (v - shift) ** 2
            if rem_i < -1e-9 * max(1.0, bound):
                continue
            if i == 0:
                count += 1
                yield tuple(x)
            else:
                yield from rec(i - 1, max(rem_i, 0.0))
            if limit is not None and count >= limit:
                return

    yield from rec(k - 1, float(bound))


def isqrt_exact(n):
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def lcm(a, b):
    return a // gcd(a, b) * b
