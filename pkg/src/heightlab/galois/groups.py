"""Small finite groups: permutation closures, SL2 over F2[eps], and candidate Galois groups.

Permutations are tuples p with p[i] the image of i (0-based).  Cycle
notation in the public helpers is 1-based to match the usual way of
writing them.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field


# permutations

def perm_from_cycles(n, cycles):
    p = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b - 1
    return tuple(p)


def perm_mul(p, q):
    """p then q: (p*q)(i) = q(p(i))."""
    return tuple(q[i] for i in p)


def perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def closure(gens, mul, identity):
    """All products of the generators (finite group), by breadth-first search."""
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def element_order(x, mul, identity):
    k, y = 1, x
    while y != identity:
        y = mul(y, x)
        k += 1
    return k


# 2x2 matrices over F2[eps]/(eps^2); an entry a + b*eps is the pair (a, b)

def _r_add(x, y):
    return ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)


def _r_mul(x, y):
    return ((x[0] * y[0]) % 2, (x[0] * y[1] + x[1] * y[0]) % 2)


def mat_mul_f2eps(A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return ((_r_add(_r_mul(a, e), _r_mul(b, g)), _r_add(_r_mul(a, f), _r_mul(b, h))),
            (_r_add(_r_mul(c, e), _r_mul(d, g)), _r_add(_r_mul(c, f), _r_mul(d, h))))


def det_f2eps(A):
    (a, b), (c, d) = A
    return _r_add(_r_mul(a, d), _r_mul(b, c))


ONE, ZERO, EPS = (1, 0), (0, 0), (0, 1)
EPS1 = (1, 1)
I2 = ((ONE, ZERO), (ZERO, ONE))


def sl2_f2eps_all():
    ring = [(a, b) for a in range(2) for b in range(2)]
    return {((a, b), (c, d)) for a, b, c, d in itertools.product(ring, repeat=4)
            if det_f2eps(((a, b), (c, d))) == ONE}


@dataclass
class GroupCheck:
    name: str
    passed: bool
    value: object
    expected: object


@dataclass
class LemmaReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, value, expected):
        self.checks.append(GroupCheck(name, value == expected, value, expected))


def build_and_verify_sl2_f2eps():
    """Check SL2(F2[eps]) = <A, B> is isomorphic to Z/2 x S4 = <(1,2,4,5), (1,3)(4,6)>.

    The isomorphism is the one sending the permutation generators to A and B;
    it is verified by closing the diagonal subgroup generated by the pairs.
    Raises AssertionError on any failure.
    """
    rep = LemmaReport()
    A = ((EPS1, EPS), (ONE, ONE))
    B = ((ZERO, ONE), (ONE, ZERO))
    rep.add("det A", det_f2eps(A), ONE)
    rep.add("det B", det_f2eps(B), ONE)
    G = closure([A, B], mat_mul_f2eps, I2)
    rep.add("order of <A, B>", len(G), 48)
    rep.add("<A, B> is all of SL2", G == sl2_f2eps_all(), True)

    sigma = perm_from_cycles(6, [[1, 2, 4, 5]])
    tau = perm_from_cycles(6, [[1, 3], [4, 6]])
    e6 = tuple(range(6))
    P = closure([sigma, tau], perm_mul, e6)
    rep.add("order of permutation group", len(P), 48)

    def pair_mul(x, y):
        return (perm_mul(x[0], y[0]), mat_mul_f2eps(x[1], y[1]))

    graph = closure([(sigma, A), (tau, B)], pair_mul, (e6, I2))
    rep.add("graph of sigma->A, tau->B has order 48", len(graph), 48)
    phi = {}
    for p, m in graph:
        phi.setdefault(p, set()).add(m)
    rep.add("map is well defined", all(len(v) == 1 for v in phi.values()), True)
    phi = {p: next(iter(v)) for p, v in phi.items()}
    rep.add("map is bijective", len(set(phi.values())) == 48, True)

    # kernel of reduction eps -> 0
    kernel = {M for M in G if all(M[i][j][0] == int(i == j) for i in range(2) for j in range(2))}
    rep.add("kernel order", len(kernel), 8)
    rep.add("kernel exponent", max(element_order(M, mat_mul_f2eps, I2) for M in kernel), 2)
    inv_phi = {m: p for p, m in phi.items()}
    kernel_perm = frozenset(inv_phi[M] for M in kernel)
    normals = normal_subgroups_of_order(P, 8)
    rep.add("normal subgroups of order 8 in permutation group", len(normals), 1)
    rep.add("kernel maps to the normal subgroup", normals[0] == kernel_perm if normals else False, True)
    rep.add("image of A", phi_inverse_image(phi, A), sigma)
    abelian = all(perm_mul(x, y) == perm_mul(y, x) for x in kernel_perm for y in kernel_perm)
    rep.add("normal subgroup is abelian", abelian, True)
    center = [z for z in P if all(perm_mul(z, g) == perm_mul(g, z) for g in P)]
    rep.add("center order", len(center), 2)
    if not rep.passed:
        bad = [c for c in rep.checks if not c.passed]
        raise AssertionError(f"group lemma check failed: {bad}")
    return rep


def phi_inverse_image(phi, M):
    for p, m in phi.items():
        if m == M:
            return p
    return None


def conjugacy_classes(G):
    G = list(G)
    n = len(G[0])
    seen = set()
    classes = []
    for x in G:
        if x in seen:
            continue
        cls = {perm_mul(perm_mul(perm_inv(g), x), g) for g in G}
        seen |= cls
        classes.append(frozenset(cls))
    return classes


def normal_subgroups_of_order(G, k):
    """Normal subgroups of order k, found as unions of conjugacy classes closed under products."""
    identity = tuple(range(len(next(iter(G)))))
    classes = [c for c in conjugacy_classes(G) if identity not in c]
    out = []
    for r in range(len(classes) + 1):
        for combo in itertools.combinations(classes, r):
            if 1 + sum(len(c) for c in combo) != k:
                continue
            S = {identity}.union(*combo)
            if all(perm_mul(a, b) in S for a in S for b in S):
                out.append(frozenset(S))
    return out


# candidate Galois groups as permutation groups

def _wreath_c2(base_gens, m):
    """T wr C2 on 2m points, T generated by base_gens on m points (0-based tuples)."""
    gens = []
    for g in base_gens:
        gens.append(tuple(g) + tuple(range(m, 2 * m)))
        gens.append(tuple(range(m)) + tuple(m + i for i in g))
    swap = tuple(list(range(m, 2 * m)) + list(range(m)))
    gens.append(swap)
    return gens


def _s_n_gens(n):
    return [perm_from_cycles(n, [list(range(1, n + 1))]), perm_from_cycles(n, [[1, 2]])]


def _a5_on_6():
    """A5 = PSL2(F5) acting on the projective line over F5 (points 0..4 and infinity = 5)."""
    inf = 5

    def mobius(a, b, c, d):
        img = []
        for x in range(6):
            if x == inf:
                img.append(inf if c == 0 else a * pow(c, -1, 5) % 5)
            else:
                den = (c * x + d) % 5
                img.append(inf if den == 0 else (a * x + b) * pow(den, -1, 5) % 5)
        return tuple(img)

    return [mobius(1, 1, 0, 1), mobius(0, 4, 1, 0)]


def _s4_on_pairs():
    """S4 acting on the six 2-subsets of {1, 2, 3, 4}."""
    pairs = list(itertools.combinations(range(4), 2))
    idx = {p: i for i, p in enumerate(pairs)}

    def act(g):
        return tuple(idx[tuple(sorted((g[a], g[b])))] for a, b in pairs)

    return [act(g) for g in _s_n_gens(4)]


def _s3_regular():
    s3 = sorted(closure(_s_n_gens(3), perm_mul, (0, 1, 2)))
    index = {g: i for i, g in enumerate(s3)}
    return [tuple(index[perm_mul(h, g)] for h in s3) for g in _s_n_gens(3)]


def _s3_squared_via_d6():
    """(S3 x S3) : C2 on 12 points, each factor acting on 3 x 2 points through S3 x sign."""
    s3 = _s_n_gens(3)

    def sign(g):
        return sum(k - 1 for k in cycle_type(g)) % 2

    def point(i, j, half):
        return half * 6 + i * 2 + j

    gens = []
    for a in s3:
        # (a, 1) and (1, a)
        for left in (True, False):
            img = [0] * 12
            for i in range(3):
                for j in range(2):
                    if left:
                        img[point(i, j, 0)] = point(a[i], j, 0)
                        img[point(i, j, 1)] = point(i, (j + sign(a)) % 2, 1)
                    else:
                        img[point(i, j, 0)] = point(i, (j + sign(a)) % 2, 0)
                        img[point(i, j, 1)] = point(a[i], j, 1)
            gens.append(tuple(img))
    swap = tuple(list(range(6, 12)) + list(range(6)))
    gens.append(swap)
    return gens


def _times_sign(gens6):
    """G on 6 points acting on 6 x {0, 1} through (g, sign g)."""
    out = []
    for g in gens6:
        s = sum(k - 1 for k in cycle_type(g)) % 2
        out.append(tuple(2 * g[i] + ((j + s) % 2) for i in range(6) for j in range(2)))
    return out


@dataclass(frozen=True)
class Realization:
    label: str
    order: int
    degree: int
    construction: str
    gens: tuple


def _make(label, order, construction, gens):
    gens = tuple(tuple(g) for g in gens)
    return Realization(label, order, len(gens[0]), construction, gens)


def candidate_realizations():
    """Permutation realizations of the candidate groups on 6, 8, 10 and 12 points."""
    lemma = [perm_from_cycles(6, [[1, 2, 4, 5]]), perm_from_cycles(6, [[1, 3], [4, 6]])]
    out = [
        _make("Z2xS4", 48, "generated by (1,2,4,5), (1,3)(4,6)", lemma),
        _make("Z2xS4", 48, "the 6-point action times the sign character", _times_sign(lemma)),
        _make("S3^2:Z2", 72, "S3 wr C2 on 3 + 3 points", _wreath_c2(_s_n_gens(3), 3)),
        _make("S3^2:Z2", 72, "S3 (regular) wr C2 on 6 + 6 points", _wreath_c2(_s3_regular(), 6)),
        _make("S3^2:Z2", 72, "(S3 x S3) : C2, each factor on 3 x 2 points via S3 x sign", _s3_squared_via_d6()),
        _make("S4^2:Z2", 1152, "S4 wr C2 on 4 + 4 points", _wreath_c2(_s_n_gens(4), 4)),
        _make("S4^2:Z2", 1152, "S4 (on 2-subsets) wr C2 on 6 + 6 points", _wreath_c2(_s4_on_pairs(), 6)),
        _make("A5^2:Z2", 7200, "A5 wr C2 on 5 + 5 points",
              _wreath_c2([perm_from_cycles(5, [[1, 2, 3, 4, 5]]), perm_from_cycles(5, [[1, 2, 3]])], 5)),
        _make("A5^2:Z2", 7200, "PSL2(F5) on P^1(F5), wr C2 on 6 + 6 points", _wreath_c2(_a5_on_6(), 6)),
    ]
    return out


CANDIDATE_LABELS = ("Z2xS4", "S3^2:Z2", "S4^2:Z2", "A5^2:Z2")


def cycle_type_distribution(real):
    """Exact distribution of cycle types over the group (Fraction values)."""
    from fractions import Fraction
    identity = tuple(range(real.degree))
    G = closure(list(real.gens), perm_mul, identity)
    if len(G) != real.order:
        raise AssertionError(f"{real.label} ({real.construction}) has order {len(G)}, expected {real.order}")
    counts = Counter(cycle_type(g) for g in G)
    return {k: Fraction(v, len(G)) for k, v in counts.items()}
