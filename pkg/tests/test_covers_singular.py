from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isofib import catalog, covers, singular
from isofib.groups import build_group
from isofib.singular import SingularityType as T
from isofib.vectors import BranchingData, enumerate_vectors, genus

from oracles import fix_count_brute, stabilized_orbit_types
from test_vectors import paper_vectors


def test_fixed_point_counts_d8():
    G, (v1, v2) = paper_vectors(1)
    y2 = G.parse("y^2")
    assert covers.fix_count(v1, y2) == 2
    assert covers.fix_count(v2, y2) == 4


def test_fixed_point_counts_m21():
    G, (v1, v2) = paper_vectors(5)
    for w in ("y", "y^2", "y^3"):
        assert covers.fix_count(v1, G.parse(w)) == 3
        assert covers.fix_count(v2, G.parse(w)) == 3
    assert covers.fix_count(v1, G.parse("x")) == 2
    assert covers.fix_count(v2, G.parse("x")) == 0


def test_identity_has_no_fixed_point_set():
    G, (v1, _) = paper_vectors(1)
    with pytest.raises(ValueError):
        covers.fixed_points(v1, 0)


@pytest.mark.parametrize("k", sorted(catalog.EXAMPLES))
def test_fix_counts_against_brute_force(k):
    G, vs = paper_vectors(k)
    for v in vs:
        for sigma in range(1, G.order):
            assert covers.fix_count(v, sigma) == fix_count_brute(G, v.branch, sigma)


@pytest.mark.parametrize("k", sorted(catalog.EXAMPLES))
def test_ramification_count(k):
    # sum over non-trivial sigma of |Fix(sigma)| = sum over points of (|Stab| - 1) = 2g-2 - |G|(2g'-2)
    G, vs = paper_vectors(k)
    for v in vs:
        total = sum(covers.fix_count(v, s) for s in range(1, G.order))
        assert total == 2 * genus(v) - 2 - G.order * (2 * v.data.base_genus - 2)


@pytest.mark.parametrize("k", sorted(catalog.EXAMPLES))
def test_conjugation_equivariance(k):
    G, vs = paper_vectors(k)
    for v in vs:
        for p in covers.ramification_points(v):
            h = p.local_generator
            for g in range(G.order):
                q = covers.act(v, g, p)
                assert q.local_generator == G.conj(g, h)
                for s in G.powers(h)[1:]:
                    assert covers.rotation_exponent(G, q, G.conj(g, s)) == covers.rotation_exponent(G, p, s)


def test_rotation_exponents():
    G, (v1, v2) = paper_vectors(5)
    y = G.parse("y")
    p = next(p for p in covers.fixed_points(v2, y) if p.local_generator == y)
    assert covers.rotation_exponent(G, p, y) == 1
    assert covers.rotation_exponent(G, p, G.parse("y^2")) == 2
    # x y x^-1 = y^2, so y^4 = x^2 y x^-2 acts near x^2.p as y does near p
    q = covers.act(v2, G.parse("x^2"), p)
    assert covers.rotation_exponent(G, q, G.parse("y^4")) == 1
    assert covers.rotation_exponent(G, q, y) == 2
    assert covers.rotation_exponent(G, covers.act(v2, G.parse("x"), p), y) == 4


@pytest.mark.parametrize("k,basket,stabilized,orbits", [
    (1, Counter({T(2, 1): 2}), 8, 2),
    (2, Counter({T(4, 1): 4}), 48, 4),
    (3, Counter({T(3, 1): 1, T(3, 2): 1}), 8, 2),
    (4, Counter({T(2, 1): 4}), 8, 4),
    (5, Counter({T(7, 1): 1, T(7, 2): 1, T(7, 4): 1}), 9, 3),
])
def test_worked_baskets(k, basket, stabilized, orbits):
    _, (v1, v2) = paper_vectors(k)
    b = singular.basket(v1, v2)
    assert b.types() == basket
    assert b.total_stabilized_points == stabilized == len(singular.stabilized_points(v1, v2))
    assert len(b) == orbits
    assert singular.basket_by_double_cosets(v1, v2) == b
    assert sorted((e.type.n, e.type.q) for e in b.entries) == sorted(stabilized_orbit_types(v1, v2))


def test_formatted_basket():
    _, (v1, v2) = paper_vectors(5)
    assert singular.basket(v1, v2).formatted() == ["1 × 1/7(1,1)", "1 × 1/7(1,2)", "1 × 1/7(1,4)"]


def test_singularity_type_swap():
    assert T(7, 2).swapped() == T(7, 4)
    assert T(5, 2).swapped() == T(5, 3)
    assert T(2, 1).swapped() == T(2, 1)
    with pytest.raises(ValueError):
        T(4, 2)


def _pool():
    D12 = build_group(catalog.D12)
    a = enumerate_vectors(D12, BranchingData(0, (2, 2, 2, 6)))
    b = enumerate_vectors(D12, BranchingData(0, (2, 6, 6)))
    c = enumerate_vectors(D12, BranchingData(1, (3,)))
    return a + b + c


POOL = _pool()


@given(st.sampled_from(POOL), st.sampled_from(POOL))
@settings(max_examples=40, deadline=None)
def test_basket_properties(v1, v2):
    b = singular.basket(v1, v2)
    # every point of an orbit has the same type
    assert all(len(s) == 1 for s in singular.orbit_types(v1, v2))
    # two independent routes
    assert singular.basket_by_double_cosets(v1, v2) == b
    assert sorted((e.type.n, e.type.q) for e in b.entries) == sorted(stabilized_orbit_types(v1, v2))
    # exchanging the factors exchanges the weights
    assert singular.basket(v2, v1).types() == Counter({t.swapped(): k for t, k in b.types().items()})
    G = v1.group
    assert sum(e.orbit_size * e.type.n for e in b.entries) == G.order * len(b)
