from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isofib import hj

from oracles import c_closed_form, discrepancies, hj_by_floor, inverse_mod

PAIRS = [(n, q) for n in range(2, 201) for q in range(1, n) if gcd(n, q) == 1]


@pytest.mark.parametrize("n,q,b", [
    (2, 1, (2,)), (3, 1, (3,)), (3, 2, (2, 2)), (4, 1, (4,)), (5, 2, (3, 2)),
    (7, 2, (4, 2)), (7, 4, (2, 4)), (7, 3, (3, 2, 2)), (7, 5, (2, 2, 3)), (7, 6, (2,) * 6),
])
def test_expansions(n, q, b):
    assert hj.expand(n, q).b == b


def test_dual_examples():
    assert hj.dual(7, 2).b == (2, 2, 3)
    assert hj.dual(4, 1).b == (2, 2, 2)
    assert hj.dual(5, 2).b == (2, 3)


@pytest.mark.parametrize("n,q,a,c,e,B", [
    (2, 1, [F(0)], F(0), F(3, 2), F(1)),
    (3, 1, [F(-1, 3)], F(1, 3), F(5, 3), F(11, 9)),
    (4, 1, [F(-1, 2)], F(1), F(7, 4), F(3, 2)),
    (7, 1, [F(-5, 7)], F(25, 7), F(13, 7), F(17, 7)),
    (7, 2, [F(-4, 7), F(-2, 7)], F(8, 7), F(20, 7), F(16, 7)),
    (7, 4, [F(-2, 7), F(-4, 7)], F(8, 7), F(20, 7), F(16, 7)),
    (3, 2, [F(0), F(0)], F(0), F(8, 3), F(16, 9)),
])
def test_corrections_frozen(n, q, a, c, e, B):
    corr = hj.corrections(hj.expand(n, q))
    assert list(corr.discrepancies) == a
    assert (corr.c, corr.e, corr.B) == (c, e, B)


def test_exhaustive_against_oracles():
    for n, q in PAIRS:
        x = hj.expand(n, q)
        assert list(x.b) == hj_by_floor(n, q)
        assert hj.evaluate(x.b) == F(n, q)
        corr = hj.corrections(x)
        assert corr.c == c_closed_form(n, q)
        # the string matrix is negative definite, so satisfying the system pins the solution
        a, b = corr.discrepancies, x.b
        for i in range(x.k):
            lhs = -b[i] * a[i] + (a[i - 1] if i else 0) + (a[i + 1] if i + 1 < x.k else 0)
            assert lhs == b[i] - 2
        if n <= 25:     # dense elimination is cubic in the string length
            assert list(a) == discrepancies(list(b))


def test_riemenschneider_and_reversal():
    for n, q in PAIRS:
        x, d = hj.expand(n, q), hj.dual(n, q)
        assert sum(bi - 1 for bi in x.b) == x.k + d.k - 1
        assert hj.expand(n, inverse_mod(q, n)).b == tuple(reversed(x.b))


def test_c_and_B_bounds():
    for n, q in PAIRS:
        x = hj.expand(n, q)
        corr = hj.corrections(x)
        assert corr.c >= 0
        assert (corr.c == 0) == hj.is_rdp(x) == (q == n - 1)
        assert corr.B >= 1
        assert (corr.B == 1) == ((n, q) == (2, 1))
        assert all(-1 < a <= 0 for a in corr.discrepancies)


@given(st.lists(st.integers(2, 9), min_size=1, max_size=8))
def test_any_string_is_an_expansion(b):
    x = hj.evaluate(b)
    assert hj.continued_fraction(x) == tuple(b)
    assert hj.expand(x.numerator, x.denominator).b == tuple(b)


@given(st.lists(st.integers(2, 9), min_size=1, max_size=8), st.lists(st.integers(-9, 9), min_size=8, max_size=8))
def test_tridiagonal_solver(b, rhs):
    rhs = rhs[:len(b)]
    sol = hj.solve_tridiagonal([-x for x in b], [1] * (len(b) - 1), rhs)
    M = hj.string_matrix(b)
    assert [sum(M[i][j] * sol[j] for j in range(len(b))) for i in range(len(b))] == rhs


@pytest.mark.parametrize("n,q", [(1, 1), (4, 2), (5, 0), (5, 5), (3, 7)])
def test_rejects_bad_types(n, q):
    with pytest.raises(hj.HJError):
        hj.expand(n, q)
