"""Generating vectors: epimorphisms from Γ(g'|m1..mr) onto a finite group.

A vector stores the images ``l_1..l_r`` of the elliptic generators and the
images ``h_1..h_2g'`` of the handle generators.  The defining relation is

    [h_1, h_2] ... [h_{2g'-1}, h_{2g'}] * l_1 * ... * l_r = 1

with ``[a, b] = a b a^-1 b^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .groups import FiniteGroup

DEFAULT_NODE_BUDGET = 5_000_000


class SearchBudgetExceeded(RuntimeError):
    pass


class VectorError(ValueError):
    pass


@dataclass(frozen=True)
class BranchingData:
    base_genus: int
    periods: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(int(m) for m in self.periods))
        if self.base_genus < 0:
            raise VectorError("base genus must be non-negative")
        if any(m < 2 for m in self.periods):
            raise VectorError(f"periods must be >= 2, got {self.periods}")

    def __str__(self):
        return f"Γ({self.base_genus}|{format_periods(self.periods)})"


def format_periods(periods: Sequence[int]) -> str:
    """Compact form such as ``2^4,4``; runs are grouped in the order given."""
    out = []
    i = 0
    while i < len(periods):
        j = i
        while j < len(periods) and periods[j] == periods[i]:
            j += 1
        out.append(str(periods[i]) if j - i == 1 else f"{periods[i]}^{j - i}")
        i = j
    return ",".join(out)


@dataclass(frozen=True, eq=False)
class GeneratingVector:
    group: FiniteGroup
    data: BranchingData
    branch: tuple[int, ...]
    handles: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branch", tuple(int(x) for x in self.branch))
        object.__setattr__(self, "handles", tuple(int(x) for x in self.handles))

    def __eq__(self, other):
        return (isinstance(other, GeneratingVector) and self.group is other.group
                and self.data == other.data and self.branch == other.branch
                and self.handles == other.handles)

    def __hash__(self):
        return hash((id(self.group), self.data, self.branch, self.handles))

    @classmethod
    def from_words(cls, group: FiniteGroup, data: BranchingData,
                   branch: Sequence[str], handles: Sequence[str] = ()) -> "GeneratingVector":
        return cls(group, data, tuple(group.parse(w) for w in branch),
                   tuple(group.parse(w) for w in handles))

    @property
    def elements(self) -> tuple[int, ...]:
        return self.branch + self.handles

    def relation_value(self) -> int:
        G = self.group
        acc = 0
        for j in range(0, len(self.handles) - 1, 2):
            acc = G.mul(acc, G.commutator(self.handles[j], self.handles[j + 1]))
        return G.mul(acc, G.prod(self.branch))

    def words(self) -> dict[str, list[str]]:
        return {"branch": [self.group.word(x) for x in self.branch],
                "handles": [self.group.word(x) for x in self.handles]}

    def __str__(self):
        w = self.words()
        s = f"[{', '.join(w['branch'])}]"
        if self.handles:
            s += f" handles [{', '.join(w['handles'])}]"
        return s


@dataclass(frozen=True)
class Validation:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def validate(v: GeneratingVector) -> Validation:
    G = v.group
    if len(v.branch) != len(v.data.periods):
        return Validation(False, f"{len(v.branch)} branch images for {len(v.data.periods)} periods")
    if len(v.handles) != 2 * v.data.base_genus:
        return Validation(False, f"{len(v.handles)} handle images for base genus {v.data.base_genus}")
    for i, (x, m) in enumerate(zip(v.branch, v.data.periods)):
        if not 0 <= x < G.order:
            return Validation(False, f"branch image {i + 1} is not an element of {G.name}")
        if G.element_order(x) != m:
            return Validation(False, f"order: o({G.word(x)}) = {G.element_order(x)} != period {m} "
                                     f"at branch point {i + 1}")
    if any(not 0 <= h < G.order for h in v.handles):
        return Validation(False, f"handle image is not an element of {G.name}")
    rel = v.relation_value()
    if rel != 0:
        return Validation(False, f"relation: product of images is {G.word(rel)}, not 1")
    sub = G.subgroup_generated(v.elements)
    if len(sub) != G.order:
        return Validation(False, f"surjectivity: images generate a subgroup of order {len(sub)} "
                                 f"< |G| = {G.order}")
    return Validation(True)


def hurwitz_euler(order: int, data: BranchingData) -> Fraction:
    """2g - 2 for the cover, by Riemann-Hurwitz."""
    return order * (2 * data.base_genus - 2 + sum(1 - Fraction(1, m) for m in data.periods))


def genus_from_data(order: int, data: BranchingData) -> int:
    chi = hurwitz_euler(order, data)
    if chi.denominator != 1 or chi.numerator % 2 or chi < -2:
        raise VectorError(f"Riemann-Hurwitz gives 2g-2 = {chi} for |G|={order}, {data}")
    return int(chi) // 2 + 1


def genus(v: GeneratingVector) -> int:
    return genus_from_data(v.group.order, v.data)


def canonical_key(v: GeneratingVector) -> tuple:
    """Minimal form under simultaneous conjugation and permutation of equal periods."""
    G = v.group
    periods = v.data.periods
    blocks: dict[int, list[int]] = {}
    for i, m in enumerate(periods):
        blocks.setdefault(m, []).append(i)
    best = None
    for g in range(G.order):
        br = [G.conj(g, x) for x in v.branch]
        for pos in blocks.values():
            vals = sorted(br[i] for i in pos)
            for i, val in zip(pos, vals):
                br[i] = val
        key = (tuple(br), tuple(G.conj(g, h) for h in v.handles))
        if best is None or key < best:
            best = key
    return best


def enumerate_vectors(G: FiniteGroup, data: BranchingData, dedup: bool = True,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> list[GeneratingVector]:
    """All generating vectors of type ``data`` (base genus 0 or 1).

    Branch images are chosen left to right with the last one solved from the
    relation.  With ``dedup`` one representative per class of
    (conjugation x reordering of equal periods) is kept, sorted by canonical key.
    """
    found = list(_iter_vectors(G, data, node_budget))
    if not dedup:
        return found
    reps: dict[tuple, GeneratingVector] = {}
    for v in found:
        reps.setdefault(canonical_key(v), v)
    return [reps[k] for k in sorted(reps)]


def _iter_vectors(G: FiniteGroup, data: BranchingData, node_budget: int) -> Iterator[GeneratingVector]:
    if data.base_genus not in (0, 1):
        raise VectorError("enumeration supports base genus 0 and 1 only")
    periods = data.periods
    by_order: dict[int, list[int]] = {}
    for x in range(G.order):
        by_order.setdefault(G.element_order(x), []).append(x)
    cands = [by_order.get(m, []) for m in periods]
    if any(not c for c in cands):
        return
    nodes = 0
    t = G.table

    if data.base_genus == 0:
        starts = [((), 0)]
    else:
        starts = [((h1, h2), G.commutator(h1, h2)) for h1 in range(G.order) for h2 in range(G.order)]

    r = len(periods)
    for handles, start in starts:
        if r == 0:
            nodes += 1
            if start == 0 and G.generates(handles):
                yield GeneratingVector(G, data, (), handles)
            continue
        stack = [(0, start, ())]
        while stack:
            i, acc, chosen = stack.pop()
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(f"node budget {node_budget} exceeded enumerating {data} "
                                           f"over {G.name}")
            if i == r - 1:
                last = G.inv(acc)
                if G.element_order(last) == periods[-1]:
                    branch = chosen + (last,)
                    if G.generates(branch + handles):
                        yield GeneratingVector(G, data, branch, handles)
                continue
            for x in reversed(cands[i]):
                stack.append((i + 1, int(t[acc, x]), chosen + (x,)))


WORD_LIST = re.compile(r"^\s*\[(.*)\]\s*$")


def parse_word_list(text: str) -> list[str]:
    """``[x, x*y, y^2]`` -> ``['x', 'x*y', 'y^2']``."""
    m = WORD_LIST.match(text)
    body = m.group(1) if m else text
    return [w.strip() for w in body.split(",") if w.strip()]
