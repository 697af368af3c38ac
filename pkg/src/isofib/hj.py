"""Hirzebruch-Jung continued fractions and resolution data of 1/n(1,q) points.

For a point of type 1/n(1,q) with n/q = [b_1, ..., b_k] the minimal
resolution is a chain Z_1 - ... - Z_k with Z_i^2 = -b_i.  All quantities are
exact rationals.

Per-point corrections used by the invariant formulas:

* discrepancies a_i, from K_S = pullback(K_T) + sum a_i Z_i, i.e. the system
  (sum_j a_j Z_j) . Z_i = b_i - 2;
* c = -sum a_i (b_i - 2), the drop of K^2 from T to its resolution;
* e = k + 1 - 1/n, the Euler-number share of the point
  (its orbit removes |G|/n points upstairs, the string adds k + 1);
* B = (2e + c) / 3, the share of 8 chi - K^2.

B follows from K^2 = 8A - sum c, e(S) = 4A + sum e and Noether's formula,
where A = (g1-1)(g2-1)/|G|:  8 chi - K^2 = (2 e(S) - K^2) / 3 = sum (2e + c)/3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence


class HJError(ValueError):
    pass


@dataclass(frozen=True)
class HJExpansion:
    n: int
    q: int
    b: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.b)

    def __str__(self):
        return "[" + ",".join(map(str, self.b)) + "]"


@dataclass(frozen=True)
class Corrections:
    discrepancies: tuple[Fraction, ...]
    c: Fraction
    e: Fraction
    B: Fraction


def _check(n: int, q: int):
    if not (0 < q < n) or gcd(n, q) != 1:
        raise HJError(f"need 0 < q < n with gcd(n, q) = 1, got n={n}, q={q}")


def continued_fraction(x: Fraction) -> tuple[int, ...]:
    """Expansion x = b1 - 1/(b2 - 1/(...)) with all b_i >= 2, for rational x > 1."""
    out = []
    while True:
        b = -((-x.numerator) // x.denominator)   # ceil
        out.append(b)
        rest = b - x
        if rest == 0:
            return tuple(out)
        x = 1 / rest


@lru_cache(maxsize=None)
def expand(n: int, q: int) -> HJExpansion:
    _check(n, q)
    return HJExpansion(n, q, continued_fraction(Fraction(n, q)))


def dual(n: int, q: int) -> HJExpansion:
    _check(n, q)
    return expand(n, n - q)


def evaluate(b: Sequence[int]) -> Fraction:
    x = Fraction(b[-1])
    for bi in reversed(b[:-1]):
        x = bi - 1 / x
    return x


def solve_tridiagonal(diag: Sequence, off: Sequence, rhs: Sequence) -> list[Fraction]:
    """Solve a symmetric tridiagonal system exactly (Thomas algorithm).

    ``off[i]`` couples unknowns i and i+1.
    """
    k = len(diag)
    d = [Fraction(x) for x in diag]
    r = [Fraction(x) for x in rhs]
    for i in range(1, k):
        if d[i - 1] == 0:
            raise HJError("singular intersection matrix")
        w = Fraction(off[i - 1]) / d[i - 1]
        d[i] -= w * off[i - 1]
        r[i] -= w * r[i - 1]
    if d[-1] == 0:
        raise HJError("singular intersection matrix")
    x = [Fraction(0)] * k
    x[-1] = r[-1] / d[-1]
    for i in range(k - 2, -1, -1):
        x[i] = (r[i] - off[i] * x[i + 1]) / d[i]
    return x


def string_matrix(b: Sequence[int]) -> list[list[int]]:
    k = len(b)
    return [[-b[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(k)] for i in range(k)]


def _end_sequence(n: int, q: int, b: Sequence[int]) -> list[int]:
    """mu_0 = n, mu_1 = q, mu_{j+1} = b_j mu_j - mu_{j-1}; ends with mu_{k+1} = 0."""
    mu = [n, q]
    for bj in b:
        mu.append(bj * mu[-1] - mu[-2])
    return mu


@lru_cache(maxsize=None)
def _corrections(n: int, q: int) -> Corrections:
    x = expand(n, q)
    b = x.b
    k = x.k
    # the solution of (sum a_j Z_j).Z_i = b_i - 2 is a_j = -1 + (mu_j + nu_{k+1-j}) / n,
    # with mu read from the q end and nu from the q^-1 end of the string
    mu = _end_sequence(n, q, b)
    nu = _end_sequence(n, pow(q, -1, n), b[::-1])
    a = [Fraction(mu[j] + nu[k + 1 - j] - n, n) for j in range(1, k + 1)]
    c = -sum(ai * (bi - 2) for ai, bi in zip(a, b))
    e = k + 1 - Fraction(1, n)
    return Corrections(tuple(a), c, e, (2 * e + c) / 3)


def corrections(x: HJExpansion) -> Corrections:
    return _corrections(x.n, x.q)


def is_rdp(x: HJExpansion) -> bool:
    return all(bi == 2 for bi in x.b)
