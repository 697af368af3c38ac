"""Bounded search for surfaces (C1 x C2)/G over a catalog of groups.

Fixed points, rotation data and hence every invariant of the surface depend on
a generating vector only through the conjugacy classes of its branch images
(conjugating one image just relabels the points over that branch point), and by
Hurwitz moves the order of those classes is irrelevant for realizability.  So
the search runs over *class signatures*: sorted tuples of conjugacy classes.

1. list signatures for both covers, drop those failing Riemann-Hurwitz
   integrality, the abelianization test or (base genus 0) normal generation;
2. evaluate chi for every signature pair from a precomputed class-by-class
   table and keep pairs meeting the chi / pg / q / K^2 targets;
3. realize each surviving signature by an explicit generating vector
   (bounded backtracking) and run the full analysis on it.
"""

from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import catalog, hj
from .analysis import analyze, to_report
from .groups import FiniteGroup, build_group
from .singular import SingularityType, double_coset_stabilizers
from .vectors import BranchingData, GeneratingVector, VectorError, genus_from_data

log = logging.getLogger(__name__)

JOBS_ENV = "ISOFIB_JOBS"


@dataclass
class SearchConfig:
    groups: list = field(default_factory=list)
    base_genera: tuple[int, int] = (0, 1)
    max_order: int = 2048
    max_period: int = 7
    max_branch_points: tuple[int, int] = (5, 5)
    filters: dict = field(default_factory=dict)
    node_budget: int = 200_000
    max_candidates: int = 20_000
    jobs: int | None = None
    base_choice: int | str = "auto"


@dataclass
class SearchResult:
    reports: list[dict]
    exhausted: list[dict]
    skipped: list[dict]
    candidates: int = 0


class _Closure:
    """Memoized joins of subgroups (as bitmasks) with single elements."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        self.full = (1 << G.order) - 1
        self.memo: dict[tuple[int, int], int] = {}

    def join(self, H: int, g: int) -> int:
        if H >> g & 1:
            return H
        key = (H, g)
        got = self.memo.get(key)
        if got is not None:
            return got
        elems = [i for i in range(self.G.order) if H >> i & 1] + [g]
        sub = self.G.subgroup_generated(elems)
        mask = 0
        for x in sub:
            mask |= 1 << x
        self.memo[key] = mask
        return mask

    def generated(self, elems) -> int:
        H = 1
        for g in elems:
            H = self.join(H, g)
        return H


class GroupData:
    """Per-group tables shared by the search phases."""

    def __init__(self, G: FiniteGroup, max_period: int):
        self.G = G
        self.classes = [c for c in G.conjugacy_classes()[1:]
                        if G.element_order(min(c)) <= max_period]
        self.reps = [min(c) for c in self.classes]
        self.members = [sorted(c) for c in self.classes]
        self.orders = [G.element_order(r) for r in self.reps]
        self.class_of = {x: k for k, c in enumerate(self.classes) for x in c}
        derived = G.derived_subgroup
        self.ab = [min(G.mul(x, d) for d in derived) for x in range(G.order)]
        self.closure = _Closure(G)
        self._comm: dict[int, list[tuple[int, int]]] | None = None
        self.normal_closure = [self._mask(self._normal_closure(c)) for c in self.classes]
        K = len(self.classes)
        self.types = [[self._pair_types(a, b) for b in range(K)] for a in range(K)]
        self.w_chi = [[sum(((hj.corrections(hj.expand(t.n, t.q)).e
                             - hj.corrections(hj.expand(t.n, t.q)).c) / 12 for t in self.types[a][b]),
                           Fraction(0)) for b in range(K)] for a in range(K)]
        self.w_c = [[sum((hj.corrections(hj.expand(t.n, t.q)).c for t in self.types[a][b]), Fraction(0))
                     for b in range(K)] for a in range(K)]

    def _mask(self, elems) -> int:
        m = 0
        for x in elems:
            m |= 1 << x
        return m

    def _normal_closure(self, cls) -> frozenset:
        return self.G.subgroup_generated(cls)

    def _pair_types(self, a: int, b: int) -> list[SingularityType]:
        G = self.G
        ra, rb = self.reps[a], self.reps[b]
        pa = G.powers(ra)
        out = []
        for t, d in double_coset_stabilizers(G, ra, rb):
            sigma = pa[len(pa) // d]
            tb = G.conj(t, rb)
            k = G.powers(tb).index(sigma)
            out.append(SingularityType(d, (k // (len(G.powers(tb)) // d)) % d))
        return out

    @property
    def commutators(self) -> dict[int, list[tuple[int, int]]]:
        if self._comm is None:
            comm: dict[int, list[tuple[int, int]]] = {}
            for h1 in range(self.G.order):
                for h2 in range(self.G.order):
                    comm.setdefault(self.G.commutator(h1, h2), []).append((h1, h2))
            self._comm = comm
        return self._comm

    def signatures(self, base_genus: int, max_r: int) -> list[tuple[int, ...]]:
        G = self.G
        out = []
        for r in range(max_r + 1):
            for sig in itertools.combinations_with_replacement(range(len(self.classes)), r):
                data = BranchingData(base_genus, tuple(self.orders[k] for k in sig))
                try:
                    genus_from_data(G.order, data)
                except VectorError:
                    continue
                acc = 0
                for k in sig:
                    acc = self.ab[G.mul(acc, self.reps[k])]
                if acc != 0:
                    continue
                if base_genus == 0:
                    N = 1
                    for k in sig:
                        N |= self.normal_closure[k]
                    if self.closure.generated([x for x in range(G.order) if N >> x & 1]) != self.closure.full:
                        continue
                out.append(sig)
        return out

    def realize(self, sig: tuple[int, ...], base_genus: int, budget: int) -> GeneratingVector | None:
        """One generating vector with branch images in the given classes, or None.

        Raises ``BudgetExhausted`` when the node budget runs out first.
        """
        G = self.G
        order_sig = sorted(sig, key=lambda k: (-self.orders[k], k))
        data = BranchingData(base_genus, tuple(self.orders[k] for k in order_sig))
        full = self.closure.full
        r = len(order_sig)
        nodes = 0
        if base_genus == 0:
            if r == 0:
                return GeneratingVector(G, data, ()) if G.order == 1 else None
            if r == 1:
                return None
            stack = [(1, self.reps[order_sig[0]], (self.reps[order_sig[0]],))]
            while stack:
                i, acc, chosen = stack.pop()
                nodes += 1
                if nodes > budget:
                    raise BudgetExhausted(nodes)
                if i == r - 1:
                    last = G.inv(acc)
                    if self.class_of.get(last) == order_sig[-1]:
                        branch = chosen + (last,)
                        if self.closure.generated(branch) == full:
                            return GeneratingVector(G, data, branch)
                    continue
                for x in self.members[order_sig[i]]:
                    stack.append((i + 1, G.mul(acc, x), chosen + (x,)))
            return None
        if base_genus != 1:
            raise VectorError("search supports base genus 0 and 1")
        comm = self.commutators
        if r == 0:
            for h1, h2 in comm.get(0, ()):
                nodes += 1
                if self.closure.generated((h1, h2)) == full:
                    return GeneratingVector(G, data, (), (h1, h2))
            return None
        first = self.reps[order_sig[0]]
        stack = [(1, first, (first,))]
        while stack:
            i, acc, chosen = stack.pop()
            nodes += 1
            if nodes > budget:
                raise BudgetExhausted(nodes)
            if i == r:
                H = self.closure.generated(chosen)
                for h1, h2 in comm.get(G.inv(acc), ()):
                    nodes += 1
                    if self.closure.join(self.closure.join(H, h1), h2) == full:
                        return GeneratingVector(G, data, chosen, (h1, h2))
                continue
            for x in self.members[order_sig[i]]:
                stack.append((i + 1, G.mul(acc, x), chosen + (x,)))
        return None


class BudgetExhausted(RuntimeError):
    pass


def _targets(cfg: SearchConfig) -> tuple[int | None, dict]:
    f = dict(cfg.filters)
    q = cfg.base_genera[0] + cfg.base_genera[1]
    chi = f.get("chi")
    if "pg" in f:
        want = int(f["pg"]) + 1 - q
        if chi is not None and chi != want:
            return None, {"empty": True}
        chi = want
    if "q" in f and int(f["q"]) != q:
        return None, {"empty": True}
    return chi, f


def search_group(spec, cfg: SearchConfig, shard: int = 0, nshards: int = 1) -> SearchResult:
    """Surfaces for one group.  With ``nshards > 1`` only every nshards-th candidate
    pair (starting at ``shard``) is realized and analyzed; the bookkeeping of
    skipped groups and candidate counts is left to shard 0.
    """
    name = spec if isinstance(spec, str) else spec.get("name", spec.get("type"))
    gspec = catalog.GROUPS[spec] if isinstance(spec, str) else spec
    G = build_group(gspec)
    res = SearchResult([], [], [])
    lead = shard == 0
    if G.order > cfg.max_order:
        if lead:
            res.skipped.append({"group": name, "reason": f"order {G.order} > max_order {cfg.max_order}"})
        return res
    chi_target, f = _targets(cfg)
    if f.get("empty"):
        return res
    data = GroupData(G, cfg.max_period)
    b1, b2 = cfg.base_genera
    s1 = data.signatures(b1, cfg.max_branch_points[0])
    s2 = data.signatures(b2, cfg.max_branch_points[1])
    if not s1 or not s2:
        return res
    K = len(data.classes)

    def counts(sigs):
        M = np.zeros((len(sigs), K))
        for i, s in enumerate(sigs):
            for k in s:
                M[i, k] += 1
        return M

    def gm1(sigs, bg):
        return np.array([genus_from_data(G.order, BranchingData(bg, tuple(data.orders[k] for k in s))) - 1
                         for s in sigs], dtype=float)

    C1, C2 = counts(s1), counts(s2)
    a1, a2 = gm1(s1, b1), gm1(s2, b2)
    W = np.array([[float(x) for x in row] for row in data.w_chi])
    pairs = []
    for start in range(0, len(s1), 512):
        block = slice(start, start + 512)
        chi = np.outer(a1[block], a2) / G.order + C1[block] @ W @ C2.T
        if chi_target is None:
            idx = np.argwhere(np.ones_like(chi, dtype=bool))
        else:
            idx = np.argwhere(np.abs(chi - chi_target) < 1e-6)
        pairs.extend((start + i, j) for i, j in idx)
    res.candidates = len(pairs) if lead else 0
    if len(pairs) > cfg.max_candidates:
        if lead:
            res.exhausted.append({"group": name, "stage": "candidates",
                                  "reason": f"{len(pairs)} signature pairs > max_candidates {cfg.max_candidates}"})
        return res
    pairs = pairs[shard::nshards]

    realized: dict[tuple, GeneratingVector | None | str] = {}

    def get(sig, bg):
        key = (sig, bg)
        if key not in realized:
            try:
                realized[key] = data.realize(sig, bg, cfg.node_budget)
            except BudgetExhausted:
                realized[key] = "exhausted"
        return realized[key]

    for i, j in pairs:
        sig1, sig2 = s1[i], s2[j]
        g1 = int(a1[i]) + 1
        g2 = int(a2[j]) + 1
        A = Fraction((g1 - 1) * (g2 - 1), G.order)
        sum_c = sum((data.w_c[a][b] for a in sig1 for b in sig2), Fraction(0))
        sum_chi = sum((data.w_chi[a][b] for a in sig1 for b in sig2), Fraction(0))
        if chi_target is not None and A + sum_chi != chi_target:
            continue
        if "K2" in f and 8 * A - sum_c != int(f["K2"]):
            continue
        v1, v2 = get(sig1, b1), get(sig2, b2)
        if "exhausted" in (v1, v2):
            res.exhausted.append({"group": name, "stage": "realize",
                                  "signature1": _sig_words(data, sig1), "signature2": _sig_words(data, sig2)})
            continue
        if v1 is None or v2 is None:
            continue
        a = analyze(v1, v2, cfg.base_choice, name=f"{name} {v1.data} x {v2.data}", group_spec=gspec)
        rep = to_report(a)
        if "K2_min" in f and rep["K2_min"] != int(f["K2_min"]):
            continue
        rep["signature1"] = _sig_words(data, sig1)
        rep["signature2"] = _sig_words(data, sig2)
        res.reports.append(rep)
    return res


def _sig_words(data: GroupData, sig) -> list[str]:
    return [data.G.word(data.reps[k]) for k in sig]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _run_task(task):
    spec, cfg, shard, nshards = task
    return search_group(spec, cfg, shard, nshards)


def run_search(cfg: SearchConfig) -> SearchResult:
    """Search every group of the catalog; output order does not depend on ``jobs``.

    With several workers each group's candidate pairs are split into ``jobs``
    interleaved shards, so one large group does not serialize the run.
    """
    jobs = cfg.jobs or default_jobs()
    specs = list(cfg.groups)
    if jobs > 1 and specs:
        tasks = [(s, cfg, k, jobs) for s in specs for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_task, tasks))
    else:
        parts = [search_group(s, cfg) for s in specs]
    out = SearchResult([], [], [])
    for p in parts:
        out.reports.extend(p.reports)
        out.exhausted.extend(p.exhausted)
        out.skipped.extend(p.skipped)
        out.candidates += p.candidates
    out.reports.sort(key=lambda r: (r["group"]["order"], r["group"]["name"], r["signature1"], r["signature2"]))
    out.exhausted.sort(key=str)
    return out
