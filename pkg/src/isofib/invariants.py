"""Numerical invariants of the minimal resolution X of T = (C1 x C2)/G."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import hj, singular
from .groups import FiniteGroup
from .singular import Basket
from .vectors import GeneratingVector, genus, validate


class InvariantError(RuntimeError):
    """A quantity that must be integral is not: the basket or corrections are wrong."""


@dataclass(frozen=True)
class SurfaceRecord:
    group: FiniteGroup
    v1: GeneratingVector
    v2: GeneratingVector
    g1: int
    g2: int
    base_genus1: int
    base_genus2: int
    basket: Basket

    @property
    def genera(self) -> tuple[int, int]:
        return self.g1, self.g2


@dataclass(frozen=True)
class Invariants:
    KT2: Fraction
    K2: int
    euler: int
    chi: int
    pg: int
    q: int
    stabilized_count: int
    singular_count: int


def make_record(v1: GeneratingVector, v2: GeneratingVector, check: bool = True) -> SurfaceRecord:
    if v1.group is not v2.group:
        raise ValueError("both generating vectors must be over the same group")
    if check:
        for v in (v1, v2):
            res = validate(v)
            if not res:
                raise ValueError(f"invalid generating vector {v}: {res.reason}")
    return SurfaceRecord(v1.group, v1, v2, genus(v1), genus(v2), v1.data.base_genus,
                         v2.data.base_genus, singular.basket(v1, v2))


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InvariantError(f"{what} = {x} is not an integer")
    return int(x)


def kt2(rec: SurfaceRecord) -> Fraction:
    return Fraction(8 * (rec.g1 - 1) * (rec.g2 - 1), rec.group.order)


def invariants(rec: SurfaceRecord) -> Invariants:
    KT2 = kt2(rec)
    sum_c = Fraction(0)
    sum_e = Fraction(0)
    for entry in rec.basket.entries:
        corr = hj.corrections(hj.expand(entry.type.n, entry.type.q))
        sum_c += corr.c
        sum_e += corr.e
    K2 = _as_int(KT2 - sum_c, "K^2")
    euler = _as_int(Fraction(4 * (rec.g1 - 1) * (rec.g2 - 1), rec.group.order) + sum_e, "e")
    chi = _as_int(Fraction(K2 + euler, 12), "chi")
    q = rec.base_genus1 + rec.base_genus2
    pg = chi - 1 + q
    return Invariants(KT2, K2, euler, chi, pg, q, rec.basket.total_stabilized_points,
                      len(rec.basket))


def sum_c(rec: SurfaceRecord) -> Fraction:
    return sum((hj.corrections(hj.expand(e.type.n, e.type.q)).c for e in rec.basket.entries),
               Fraction(0))


def euler_by_counting(rec: SurfaceRecord) -> int:
    """e(X) = [e(C1) e(C2) - N]/|G| + s + sum k, N and s counted from explicit points."""
    orbs = singular.orbit_representatives(rec.v1, rec.v2)
    free = (2 - 2 * rec.g1) * (2 - 2 * rec.g2) - singular.stabilized_count(rec.v1, rec.v2)
    if free % rec.group.order:
        raise InvariantError(f"Euler number {free} of the free part is not divisible by |G|")
    strings = sum(hj.expand(*_orbit_type(rec, rep)).k for rep, _ in orbs)
    return free // rec.group.order + len(orbs) + strings


def _orbit_type(rec: SurfaceRecord, rep) -> tuple[int, int]:
    t = singular._type(rec.v2, rep)
    return t.n, t.q


def is_quasi_bundle(rec: SurfaceRecord) -> bool:
    return len(rec.basket) == 0
