"""Fixed points and local rotation data of a G-cover given by a generating vector.

Points with non-trivial stabilizer lie over the branch points.  Over branch
point ``i`` they are labelled by the cosets ``t<l_i>``; the stabilizer of that
point is generated by ``t l_i t^-1``, which by convention acts on the tangent
line by ``exp(2 pi i / m_i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import FiniteGroup
from .vectors import GeneratingVector


@dataclass(frozen=True, order=True)
class LabeledFixedPoint:
    branch_index: int
    coset_id: int
    local_generator: int


def coset_id(G: FiniteGroup, t: int, h: int) -> int:
    """Smallest element of the left coset t<h>."""
    return min(G.mul(t, x) for x in G.powers(h))


def ramification_points(v: GeneratingVector) -> list[LabeledFixedPoint]:
    return list(_ramification_points(v))


@lru_cache(maxsize=256)
def _ramification_points(v: GeneratingVector) -> tuple[LabeledFixedPoint, ...]:
    G = v.group
    out = []
    for i, l in enumerate(v.branch):
        seen = set()
        ids = coset_map(v, i)
        for t in range(G.order):
            cid = ids[t]
            if cid in seen:
                continue
            seen.add(cid)
            out.append(LabeledFixedPoint(i, cid, G.conj(t, l)))
    return tuple(out)


@lru_cache(maxsize=512)
def stabilizer_matrix(v: GeneratingVector) -> np.ndarray:
    """Boolean matrix with entry [k, g] true iff g fixes the k-th ramification point."""
    G = v.group
    pts = _ramification_points(v)
    out = np.zeros((len(pts), G.order), dtype=bool)
    for k, p in enumerate(pts):
        out[k, list(G.powers(p.local_generator))] = True
    out.flags.writeable = False
    return out


def fixed_points(v: GeneratingVector, sigma: int) -> list[LabeledFixedPoint]:
    if sigma == 0:
        raise ValueError("the identity fixes the whole curve")
    pts = _ramification_points(v)
    return [pts[k] for k in np.flatnonzero(stabilizer_matrix(v)[:, sigma])]


def fix_count(v: GeneratingVector, sigma: int) -> int:
    if sigma == 0:
        raise ValueError("the identity fixes the whole curve")
    return int(stabilizer_matrix(v)[:, sigma].sum())


def discrete_log(G: FiniteGroup, h: int, sigma: int) -> int | None:
    try:
        return G.powers(h).index(sigma)
    except ValueError:
        return None


def rotation_exponent(G: FiniteGroup, p: LabeledFixedPoint, sigma: int) -> int:
    """u with gcd(u, o(sigma)) = 1 such that sigma acts near p by xi^u, xi = exp(2 pi i/o(sigma))."""
    h = p.local_generator
    k = discrete_log(G, h, sigma)
    if k is None or sigma == 0:
        raise ValueError(f"{G.word(sigma)} is not a non-trivial element of the stabilizer of {p}")
    m = G.element_order(h)
    d = G.element_order(sigma)
    return (k // (m // d)) % d


@lru_cache(maxsize=256)
def coset_map(v: GeneratingVector, i: int) -> tuple[int, ...]:
    """coset_map(v, i)[t] is the label of the point t<l_i> over branch point i."""
    G = v.group
    return tuple(G.table[:, list(G.powers(v.branch[i]))].min(axis=1).tolist())


def act(v: GeneratingVector, g: int, p: LabeledFixedPoint) -> LabeledFixedPoint:
    """Image of p under g."""
    G = v.group
    return LabeledFixedPoint(p.branch_index, coset_map(v, p.branch_index)[G.mul(g, p.coset_id)],
                             G.conj(g, p.local_generator))
