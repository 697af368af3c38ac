"""End-to-end analysis of one surface (C1 x C2)/G and its report."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import fibres as fib
from . import gate, invariants, singular
from .covers import fix_count
from .fibres import AmplenessVerdict, BlowdownTrace, FibreModel
from .gate import GateVerdict
from .invariants import Invariants, SurfaceRecord
from .vectors import GeneratingVector


class InvariantViolation(RuntimeError):
    """Two independent routes disagree, or an identity that must hold does not."""


@dataclass
class Analysis:
    name: str | None
    rec: SurfaceRecord
    inv: Invariants
    euler_counting: int
    base_choice: int
    fibres: list[FibreModel]
    contracted: list[FibreModel]
    traces: list[BlowdownTrace]
    deltas: list[Fraction]
    verdict: AmplenessVerdict
    gate: GateVerdict
    seconds: float
    group_spec: dict | None = None

    @property
    def beta(self) -> int:
        return sum(t.beta for t in self.traces)

    @property
    def K2_min(self) -> int:
        return self.inv.K2 + self.beta


def choose_base(rec: SurfaceRecord, base_choice: int | str = "auto") -> int:
    if base_choice in (1, 2):
        return int(base_choice)
    if base_choice != "auto":
        raise ValueError(f"base_choice must be 1, 2 or 'auto', got {base_choice!r}")
    if rec.base_genus2 >= 1:
        return 2
    if rec.base_genus1 >= 1:
        return 1
    return 2


def analyze(v1: GeneratingVector, v2: GeneratingVector, base_choice: int | str = "auto",
            name: str | None = None, group_spec: dict | None = None) -> Analysis:
    t0 = time.perf_counter()
    rec = invariants.make_record(v1, v2)
    inv = invariants.invariants(rec)
    e_count = invariants.euler_by_counting(rec)
    _require(e_count == inv.euler, f"Euler number: corrections give {inv.euler}, counting gives {e_count}")
    fast = singular.basket_by_double_cosets(v1, v2)
    _require(fast == rec.basket, f"basket: orbits give {rec.basket}, double cosets give {fast}")
    _require(inv.q == rec.base_genus1 + rec.base_genus2, "q != g(C1/G) + g(C2/G)")
    if invariants.is_quasi_bundle(rec):
        _require(inv.K2 == 8 * inv.chi, f"quasi-bundle with K^2 = {inv.K2} != 8chi = {8 * inv.chi}")

    base = choose_base(rec, base_choice)
    try:
        models = fib.fibres(rec, base)
        pairs = [fib.contract_to_relative_minimal(f) for f in models]
    except fib.FibreError as exc:
        raise InvariantViolation(str(exc)) from exc
    contracted = [p[0] for p in pairs]
    traces = [p[1] for p in pairs]
    deltas = [fib.delta(f, t) for f, t in zip(models, traces)]
    verdict = fib.ampleness_verdict(rec, contracted, traces, base)
    try:
        gv = gate.check(rec, inv, verdict, sum(t.beta for t in traces), sum(deltas, Fraction(0)), base)
    except AssertionError as exc:
        raise InvariantViolation(str(exc)) from exc
    return Analysis(name, rec, inv, e_count, base, models, contracted, traces, deltas, verdict, gv,
                    time.perf_counter() - t0, group_spec)


def _require(cond: bool, msg: str):
    if not cond:
        raise InvariantViolation(msg)


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _components(f: FibreModel) -> dict:
    return {
        "expression": f.expression(),
        "components": [{"name": c.name, "multiplicity": c.mult, "self_intersection": c.self_int,
                        "K_degree": c.k_deg, "genus": c.arithmetic_genus,
                        "string": c.string_index, "position": c.position}
                       for c in f.components],
        "intersections": sorted([*sorted(k), v] for k, v in f.meets.items()),
    }


def fixed_point_table(rec: SurfaceRecord) -> list[dict]:
    G = rec.group
    rows = []
    for cls in G.conjugacy_classes()[1:]:
        sigma = min(cls)
        n1, n2 = fix_count(rec.v1, sigma), fix_count(rec.v2, sigma)
        if n1 or n2:
            rows.append({"element": G.word(sigma), "order": G.element_order(sigma),
                         "class_size": len(cls), "C1": n1, "C2": n2})
    return rows


def _cover(v: GeneratingVector, g: int) -> dict:
    w = v.words()
    return {"base_genus": v.data.base_genus, "periods": list(v.data.periods),
            "branch": w["branch"], "handles": w["handles"], "genus": g}


def to_report(a: Analysis) -> dict:
    rec, inv, gv = a.rec, a.inv, a.gate
    fibres = []
    for f, g, t, d in zip(a.fibres, a.contracted, a.traces, a.deltas):
        fibres.append({
            "branch_index": f.branch_index,
            "multiplicity": f.central.mult if f.central else 1,
            "central_genus_riemann_hurwitz": f.central_genus_rh,
            "singular_points": [str(fib.oriented_type(e, f.base_choice)) for e in f.points],
            **_components(f),
            "contracted": list(t.contracted),
            "beta": t.beta,
            "final": _components(g),
            "delta": _frac(d),
        })
    return {
        "name": a.name,
        "group": {"name": rec.group.name, "order": rec.group.order, "spec": a.group_spec},
        "cover1": _cover(rec.v1, rec.g1),
        "cover2": _cover(rec.v2, rec.g2),
        "genera": [rec.g1, rec.g2],
        "fixed_points": fixed_point_table(rec),
        "stabilized_count": inv.stabilized_count,
        "singular_count": inv.singular_count,
        "basket": rec.basket.formatted(),
        "basket_entries": [{"n": e.type.n, "q": e.type.q, "fibre1_index": e.fibre1_index,
                            "fibre2_index": e.fibre2_index, "orbit_size": e.orbit_size}
                           for e in rec.basket.entries],
        "KT2_num": inv.KT2.numerator,
        "KT2_den": inv.KT2.denominator,
        "sum_c": _frac(invariants.sum_c(rec)),
        "K2": inv.K2,
        "euler": inv.euler,
        "euler_by_counting": a.euler_counting,
        "chi": inv.chi,
        "pg": inv.pg,
        "q": inv.q,
        "quasi_bundle": invariants.is_quasi_bundle(rec),
        "base_choice": a.base_choice,
        "fibres": fibres,
        "delta_sum": _frac(sum(a.deltas, Fraction(0))),
        "beta": a.beta,
        "K2_min": a.K2_min,
        "minimal": a.verdict.minimal,
        "K_ample": a.verdict.K_ample,
        "canonical_model_is_T": a.verdict.canonical_model_is_T,
        "gate": {
            "applicable": gv.applicable,
            "reason": gv.reason,
            "serrano_tan_ok": gv.serrano_tan_ok,
            "main1_ok": gv.main1_ok,
            "main2_checked": gv.main2_checked,
            "main2_ok": gv.main2_ok,
            "gap": gv.gap,
            "equality_flags": gv.equality_flags,
            "equality_case_note": gv.equality_case_note,
            "violated": gv.violated,
        },
        "timing_ms": round(a.seconds * 1000, 3),
    }
