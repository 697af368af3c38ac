"""Check K^2 <= 8chi, K^2 <= 8chi - 2 and (for ample K) K^2 <= 8chi - 5 on a surface."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import hj
from .fibres import AmplenessVerdict
from .invariants import Invariants, SurfaceRecord, is_quasi_bundle
from .singular import SingularityType


@dataclass(frozen=True)
class GateVerdict:
    applicable: bool
    reason: str
    serrano_tan_ok: bool
    main1_ok: bool
    main2_checked: bool
    main2_ok: bool | None
    gap: int
    K2_min: int
    equality_flags: dict = field(default_factory=dict)
    equality_case_note: str = ""

    @property
    def violated(self) -> bool:
        return self.applicable and not (self.serrano_tan_ok and self.main1_ok
                                        and self.main2_ok is not False
                                        and self.equality_flags.get("two_nodes_on_canonical_model", True))


def check(rec: SurfaceRecord, inv: Invariants, verdict: AmplenessVerdict, beta: int,
          sum_delta: Fraction, base_choice: int) -> GateVerdict:
    K2m = inv.K2 + beta
    gap = 8 * inv.chi - K2m
    if gap != sum_delta:
        raise AssertionError(f"8chi - K^2 = {gap} but the fibre defects sum to {sum_delta}")
    base_genus = rec.base_genus2 if base_choice == 2 else rec.base_genus1
    reasons = []
    if base_genus < 1:
        reasons.append("base of the chosen fibration is rational")
    if is_quasi_bundle(rec):
        reasons.append("quasi-bundle")
    if min(rec.g1, rec.g2) < 2:
        reasons.append("a fibre curve has genus < 2")
    applicable = not reasons
    main1 = K2m <= 8 * inv.chi - 2
    ample = bool(verdict.K_ample) and K2m > 0
    main2 = (K2m <= 8 * inv.chi - 5) if ample else None
    flags = {"serrano_tan_equality": gap == 0, "main1_equality": gap == 2,
             "main2_equality": ample and gap == 5}
    note = ""
    if applicable and gap == 2:
        two_nodes = rec.basket.types() == Counter({SingularityType(2, 1): 2})
        rdp = all(hj.is_rdp(hj.expand(e.type.n, e.type.q)) for e in rec.basket.entries)
        ok = two_nodes and bool(verdict.minimal) and rdp
        flags["two_nodes_on_canonical_model"] = ok
        note = ("canonical model T has exactly two ordinary double points" if ok
                else "equality in K^2 <= 8chi - 2 without exactly two nodes on the canonical model")
    return GateVerdict(applicable, "; ".join(reasons) or "hypotheses hold", gap >= 0, main1,
                       ample, main2, gap, K2m, flags, note)
