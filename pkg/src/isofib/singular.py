"""Points of C1 x C2 with non-trivial stabilizer and the basket of T = (C1 x C2)/G.

Types are stored oriented: ``1/n(1,q)`` means the stabilizer generator acting
by weight 1 on the C1 direction acts by weight q on the C2 direction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import covers
from .covers import LabeledFixedPoint
from .vectors import GeneratingVector


class SingularLocusError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class SingularityType:
    n: int
    q: int

    def __post_init__(self):
        if not (0 < self.q < self.n) or gcd(self.n, self.q) != 1:
            raise ValueError(f"invalid cyclic quotient type 1/{self.n}(1,{self.q})")

    def swapped(self) -> "SingularityType":
        """Same point seen with the C2 direction normalized to weight 1."""
        return SingularityType(self.n, pow(self.q, -1, self.n))

    def __str__(self):
        return f"1/{self.n}(1,{self.q})"


@dataclass(frozen=True, order=True)
class BasketEntry:
    fibre1_index: int
    fibre2_index: int
    type: SingularityType
    orbit_size: int


@dataclass(frozen=True)
class Basket:
    entries: tuple[BasketEntry, ...] = ()
    total_stabilized_points: int = 0

    def __len__(self):
        return len(self.entries)

    def types(self) -> Counter:
        return Counter(e.type for e in self.entries)

    def formatted(self) -> list[str]:
        """``k × 1/n(1,q)`` strings sorted by (n, q)."""
        return [f"{k} × {t}" for t, k in sorted(self.types().items())]

    def __str__(self):
        return " + ".join(self.formatted()) or "∅"

    def on_fibre(self, base_choice: int, index: int) -> list[BasketEntry]:
        attr = "fibre1_index" if base_choice == 1 else "fibre2_index"
        return [e for e in self.entries if getattr(e, attr) == index]


@dataclass(frozen=True)
class StabilizedPoint:
    p1: LabeledFixedPoint
    p2: LabeledFixedPoint
    generator: int          # generator of Stab(p1) ∩ Stab(p2) acting with weight 1 on C1


def _check_same_group(v1: GeneratingVector, v2: GeneratingVector):
    if v1.group is not v2.group:
        raise SingularLocusError("both generating vectors must be over the same group object")


@dataclass(frozen=True)
class _PointTable:
    points: tuple[LabeledFixedPoint, ...]
    members: np.ndarray     # members[k, g] is True iff g stabilizes point k
    moves: tuple[np.ndarray, ...]   # moves[s][k] = index of generator s applied to point k


def _generators(G) -> list[int]:
    gens = [g for g in G.generator_names.values() if g != 0]
    return gens if G.generates(gens) else list(range(1, G.order))


@lru_cache(maxsize=512)
def _point_table(v: GeneratingVector) -> _PointTable:
    G = v.group
    pts = tuple(covers.ramification_points(v))
    members = covers.stabilizer_matrix(v)
    index = {(p.branch_index, p.coset_id): k for k, p in enumerate(pts)}
    moves = []
    for g in _generators(G):
        maps = [covers.coset_map(v, i) for i in range(len(v.branch))]
        moves.append(np.array([index[(p.branch_index, maps[p.branch_index][G.mul(g, p.coset_id)])]
                               for p in pts], dtype=np.int64))
    return _PointTable(pts, members, tuple(moves))


@lru_cache(maxsize=64)
def _explicit(v1: GeneratingVector, v2: GeneratingVector):
    """Stabilized pairs as index arrays (i1, i2, |Stab|) plus an orbit label per pair.

    Orbits come from closing under the generators of G: labels are pulled back
    and pushed forward along every generator until they stop changing.
    """
    _check_same_group(v1, v2)
    t1, t2 = _point_table(v1), _point_table(v2)
    inter = t1.members.astype(np.int32) @ t2.members.T.astype(np.int32)
    i1, i2 = np.nonzero(inter > 1)
    d = inter[i1, i2]
    n2 = len(t2.points)
    where = np.full(len(t1.points) * n2, -1, dtype=np.int64)
    where[i1 * n2 + i2] = np.arange(len(i1))
    images = []
    for m1, m2 in zip(t1.moves, t2.moves):
        img = where[m1[i1] * n2 + m2[i2]]
        if (img < 0).any():
            raise SingularLocusError("orbit of a stabilized point leaves the stabilized set")
        images.append(img)
    label = np.arange(len(i1))
    while True:
        new = label.copy()
        for img in images:
            np.minimum.at(new, img, label)
            np.minimum(new, label[img], out=new)
        new = new[new]
        if np.array_equal(new, label):
            break
        label = new
    return i1, i2, d, label


def _stabilized(t1: _PointTable, t2: _PointTable, G, k1: int, k2: int, d: int) -> StabilizedPoint:
    p1 = t1.points[k1]
    pw1 = G.powers(p1.local_generator)
    return StabilizedPoint(p1, t2.points[k2], pw1[len(pw1) // d])


def stabilized_points(v1: GeneratingVector, v2: GeneratingVector) -> list[StabilizedPoint]:
    G = v1.group
    t1, t2 = _point_table(v1), _point_table(v2)
    i1, i2, d, _ = _explicit(v1, v2)
    return [_stabilized(t1, t2, G, a, b, c) for a, b, c in zip(i1.tolist(), i2.tolist(), d.tolist())]


def _type(v2: GeneratingVector, sp: StabilizedPoint) -> SingularityType:
    G = v2.group
    d = G.element_order(sp.generator)
    return SingularityType(d, covers.rotation_exponent(G, sp.p2, sp.generator))


def orbits(v1: GeneratingVector, v2: GeneratingVector) -> list[list[StabilizedPoint]]:
    """Partition the stabilized points into G-orbits, in order of first appearance."""
    pts = stabilized_points(v1, v2)
    label = _explicit(v1, v2)[3]
    groups: dict[int, list[StabilizedPoint]] = {}
    for sp, lab in zip(pts, label.tolist()):
        groups.setdefault(lab, []).append(sp)
    return [sorted(orb, key=lambda sp: (sp.p1, sp.p2)) for orb in groups.values()]


def orbit_representatives(v1: GeneratingVector, v2: GeneratingVector) -> list[tuple[StabilizedPoint, int]]:
    """(first member, orbit size) per orbit, without building every point."""
    G = v1.group
    t1, t2 = _point_table(v1), _point_table(v2)
    i1, i2, d, label = _explicit(v1, v2)
    reps, first, sizes = np.unique(label, return_index=True, return_counts=True)
    order = np.argsort(first)
    return [(_stabilized(t1, t2, G, int(i1[first[k]]), int(i2[first[k]]), int(d[first[k]])), int(sizes[k]))
            for k in order]


def stabilized_count(v1: GeneratingVector, v2: GeneratingVector) -> int:
    return len(_explicit(v1, v2)[0])


def basket(v1: GeneratingVector, v2: GeneratingVector) -> Basket:
    """One entry per G-orbit of stabilized points."""
    G = v1.group
    entries = []
    total = 0
    for rep, size in orbit_representatives(v1, v2):
        t = _type(v2, rep)
        if size * t.n != G.order:
            raise SingularLocusError(f"orbit of size {size} for a stabilizer of order {t.n}")
        total += size
        entries.append(BasketEntry(rep.p1.branch_index, rep.p2.branch_index, t, size))
    return Basket(tuple(sorted(entries)), total)


def orbit_types(v1: GeneratingVector, v2: GeneratingVector) -> list[set[SingularityType]]:
    """For each orbit, the set of types computed from every member (must be singletons)."""
    return [{_type(v2, sp) for sp in orb} for orb in orbits(v1, v2)]


def basket_by_double_cosets(v1: GeneratingVector, v2: GeneratingVector) -> Basket:
    """Same basket via double cosets <l_i> t <l'_j>, one per orbit over (i, j)."""
    _check_same_group(v1, v2)
    G = v1.group
    entries = []
    total = 0
    for i, a in enumerate(v1.branch):
        pa = G.powers(a)
        m = len(pa)
        for j, b in enumerate(v2.branch):
            for t, d in double_coset_stabilizers(G, a, b):
                sigma = pa[m // d]
                p2 = LabeledFixedPoint(j, -1, G.conj(t, b))
                q = covers.rotation_exponent(G, p2, sigma)
                entries.append(BasketEntry(i, j, SingularityType(d, q), G.order // d))
                total += G.order // d
    return Basket(tuple(sorted(entries)), total)


@lru_cache(maxsize=4096)
def double_coset_stabilizers(G, a: int, b: int) -> tuple[tuple[int, int], ...]:
    """(t, |<a> ∩ t<b>t^-1|) for representatives t of <a>\\G/<b> with non-trivial intersection."""
    pa = G.powers(a)
    sa = set(pa)
    pb = G.powers(b)
    seen = set()
    out = []
    for t in range(G.order):
        if t in seen:
            continue
        for x in pa:
            for y in pb:
                seen.add(G.mul(G.mul(x, t), y))
        d = sum(1 for y in pb if G.conj(t, y) in sa)
        if d > 1:
            out.append((t, d))
    return tuple(out)
