"""Slow but independent re-implementations used to check the library."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


def hj_by_floor(n: int, q: int) -> list[int]:
    """n/q = b1 - 1/(b2 - ...) via repeated ceilings on plain integers."""
    out = []
    a, b = n, q
    while b:
        c = -(-a // b)
        out.append(c)
        a, b = b, c * b - a
    return out


def inverse_mod(q: int, n: int) -> int:
    return next(x for x in range(1, n + 1) if (q * x) % n == 1 % n)


def gauss_solve(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Dense Gauss-Jordan elimination over the rationals."""
    k = len(rhs)
    A = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(k):
        piv = next(r for r in range(col, k) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(k):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][k] for r in range(k)]


def discrepancies(b: list[int]) -> list[Fraction]:
    """Coefficients a_j with K = sum a_j Z_j on the string, by adjunction."""
    k = len(b)
    M = [[(-b[i] if i == j else 1 if abs(i - j) == 1 else 0) for j in range(k)] for i in range(k)]
    return gauss_solve(M, [bi - 2 for bi in b])


def c_closed_form(n: int, q: int) -> Fraction:
    """K^2 correction of 1/n(1,q) from the classical formula in n, q, q' and the b_i."""
    b = hj_by_floor(n, q)
    qp = inverse_mod(q, n)
    return sum(x - 2 for x in b) - 2 + Fraction(q + qp + 2, n)


def fix_count_brute(G, branch: tuple[int, ...], sigma: int) -> int:
    """Fixed points of sigma over all branch points: cosets t<l> with t^-1 sigma t in <l>."""
    total = 0
    for l in branch:
        H = set(G.powers(l))
        hits = sum(1 for t in range(G.order) if G.conj(G.inv(t), sigma) in H)
        total += hits // len(H)
    return total


def vectors_brute(G, periods: tuple[int, ...], base_genus: int) -> set[tuple]:
    """Every generating vector, by trying all tuples."""
    out = set()
    cands = [[x for x in range(G.order) if G.element_order(x) == m] for m in periods]
    handle_range = list(itertools.product(range(G.order), repeat=2 * base_genus))
    for hs in handle_range:
        comm = 0
        for j in range(base_genus):
            comm = G.mul(comm, G.commutator(hs[2 * j], hs[2 * j + 1]))
        for br in itertools.product(*cands):
            if G.mul(comm, G.prod(br)) == 0 and G.generates(br + hs):
                out.add((br, hs))
    return out


def conjugacy_classes_brute(G) -> list[set[int]]:
    seen, out = set(), []
    for a in range(G.order):
        if a in seen:
            continue
        cls = {G.mul(G.mul(g, a), G.inv(g)) for g in range(G.order)}
        seen |= cls
        out.append(cls)
    return out


def stabilized_orbit_types(v1, v2) -> list[tuple[int, int]]:
    """Types of the singular points by explicit orbits on pairs of ramification points.

    Points of C_i over branch point j are left cosets t<l_j>; g sends t<l> to gt<l>.
    A pair is stabilized by the intersection of the two stabilizers t<l>t^-1.
    """
    G = v1.group

    def points(v):
        pts = []
        for j, l in enumerate(v.branch):
            H = frozenset(G.powers(l))
            seen = set()
            for t in range(G.order):
                coset = frozenset(G.mul(t, h) for h in H)
                if coset not in seen:
                    seen.add(coset)
                    pts.append((j, coset, G.mul(G.mul(t, l), G.inv(t))))
        return pts

    P1, P2 = points(v1), points(v2)
    pairs = []
    for p in P1:
        for r in P2:
            stab = set(G.powers(p[2])) & set(G.powers(r[2]))
            if len(stab) > 1:
                pairs.append((p, r))
    index = {(p[0], p[1], r[0], r[1]): i for i, (p, r) in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, (p, r) in enumerate(pairs):
        for g in range(G.order):
            j = index[(p[0], frozenset(G.mul(g, x) for x in p[1]), r[0], frozenset(G.mul(g, x) for x in r[1]))]
            parent[find(i)] = find(j)
    types = []
    for root in sorted({find(i) for i in range(len(pairs))}):
        p, r = pairs[root]
        # local generators: rotation e^{2 pi i/m1} on C1, e^{2 pi i/m2} on C2
        h1, h2 = p[2], r[2]
        m1, m2 = G.element_order(h1), G.element_order(h2)
        stab = sorted(set(G.powers(h1)) & set(G.powers(h2)))
        n = len(stab)
        sigma = G.power(h1, m1 // n)        # acts on C1 by e^{2 pi i/n}
        k = next(e for e in range(m2) if G.power(h2, e) == sigma)
        q = (k // (m2 // n)) % n
        assert gcd(q, n) == 1
        types.append((n, q))
    return types
