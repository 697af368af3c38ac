"""Report serialization: JSON (with schema), aligned text and CSV summaries."""

from __future__ import annotations

import csv
import io
import json
from functools import lru_cache
from importlib import resources

import jsonschema

CSV_FIELDS = [
    "name", "group.name", "group.order", "cover1.periods", "cover2.periods", "genera",
    "basket", "KT2_num", "KT2_den", "K2", "euler", "chi", "pg", "q", "quasi_bundle",
    "beta", "K2_min", "minimal", "K_ample", "canonical_model_is_T", "gate.applicable",
    "gate.gap", "gate.main1_ok", "gate.main2_ok",
]


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("isofib").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@lru_cache(maxsize=1)
def _validator():
    cls = jsonschema.validators.validator_for(schema())
    cls.check_schema(schema())
    return cls(schema())


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if the report does not match the schema."""
    _validator().validate(report)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False)


def project(report: dict, path: str) -> str:
    """CSV cell for a dotted JSON path."""
    val = report
    for part in path.split("."):
        val = val[part]
    if isinstance(val, list):
        return " + ".join(map(str, val)) if path == "basket" else ",".join(map(str, val))
    if val is None:
        return ""
    return str(val)


def to_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        w.writerow([project(r, f) for f in CSV_FIELDS])
    return buf.getvalue()


def _fibre_text(f: dict, indent: str = "    ") -> list[str]:
    """Text-art dual graph: central curve, then each string as a chain."""
    lines = [f"{indent}F = {f['expression']}"]
    comps = f["components"]
    by_name = {c["name"]: c for c in comps}
    for c in comps:
        if c["string"] is None:
            lines.append(f"{indent}  {c['name']}: mult {c['multiplicity']}, self-int {c['self_intersection']},"
                         f" K-deg {c['K_degree']}, genus {c['genus']}")
    strings = sorted({c["string"] for c in comps if c["string"] is not None})
    for s in strings:
        chain = sorted((c for c in comps if c["string"] == s), key=lambda c: c["position"])
        tee = "└" if s == strings[-1] else "├"
        lines.append(f"{indent}  {tee}─ " + " ─ ".join(
            f"{c['name']}({c['multiplicity']}; {c['self_intersection']}, K {c['K_degree']})" for c in chain))

    def chain_edge(a, b):
        ca, cb = by_name[a], by_name[b]
        if ca["string"] is None or cb["string"] is None:
            other = cb if ca["string"] is None else ca
            return other["string"] is not None and other["position"] == 1
        return ca["string"] == cb["string"] and abs(ca["position"] - cb["position"]) == 1

    extra = [f"{a}·{b}={v}" for a, b, v in f["intersections"] if not chain_edge(a, b) or v != 1]
    if extra:
        lines.append(f"{indent}  also meets: " + ", ".join(extra))
    return lines


def to_text(r: dict) -> str:
    g = r["gate"]
    out = []
    if r.get("name"):
        out.append(r["name"])
    out.append(f"group           {r['group']['name']} (order {r['group']['order']})")
    for k in ("cover1", "cover2"):
        c = r[k]
        hs = f" handles [{', '.join(c['handles'])}]" if c["handles"] else ""
        out.append(f"{k:<15} Γ({c['base_genus']}|{','.join(map(str, c['periods']))})"
                   f" -> [{', '.join(c['branch'])}]{hs}   genus {c['genus']}")
    out.append("fixed points    " + "; ".join(
        f"{row['element']} (o={row['order']}): C1 {row['C1']}, C2 {row['C2']}" for row in r["fixed_points"]))
    out.append(f"stabilized      {r['stabilized_count']} points, {r['singular_count']} singular points")
    out.append(f"Sing T          {' + '.join(r['basket']) or 'smooth (quasi-bundle)'}")
    kt2 = str(r["KT2_num"]) if r["KT2_den"] == 1 else f"{r['KT2_num']}/{r['KT2_den']}"
    out.append(f"K_T^2           {kt2}   sum c = {r['sum_c']}")
    out.append(f"invariants      K^2 = {r['K2']}  e = {r['euler']} (counting {r['euler_by_counting']})"
               f"  chi = {r['chi']}  pg = {r['pg']}  q = {r['q']}")
    k = r["base_choice"]
    out.append(f"fibration       X -> C{k}/G, general fibre C{3 - k}")
    for f in r["fibres"]:
        out.append(f"  branch point {f['branch_index']}  (multiplicity {f['multiplicity']},"
                   f" points {', '.join(f['singular_points']) or 'none'})")
        out.extend(_fibre_text(f))
        if f["contracted"]:
            out.append(f"    contract {', '.join(f['contracted'])}:")
            out.extend(_fibre_text(f["final"], "      "))
        out.append(f"    delta = {f['delta']}")
    out.append(f"minimal model   K^2 = {r['K2_min']} (beta = {r['beta']}), 8chi - K^2 = {g['gap']}"
               f" = sum delta {r['delta_sum']}")
    out.append(f"verdicts        minimal = {r['minimal']}  K ample = {r['K_ample']}"
               f"  canonical model = T: {r['canonical_model_is_T']}")
    out.append(f"theorem gate    applicable = {g['applicable']} ({g['reason']})")
    out.append(f"                K^2 <= 8chi: {g['serrano_tan_ok']}   K^2 <= 8chi-2: {g['main1_ok']}"
               f"   K^2 <= 8chi-5 (ample): {g['main2_ok'] if g['main2_checked'] else 'not checked'}")
    if g["equality_case_note"]:
        out.append(f"                {g['equality_case_note']}")
    return "\n".join(out) + "\n"


def summary_table(reports: list[dict]) -> str:
    head = ["group", "periods1", "periods2", "g1", "g2", "basket", "K2", "K2m", "chi", "gap", "ample", "gate"]
    rows = []
    for r in reports:
        g = r["gate"]
        verdict = "n/a" if not g["applicable"] else ("VIOLATED" if g["violated"] else "ok")
        rows.append([r["group"]["name"], ",".join(map(str, r["cover1"]["periods"])),
                     ",".join(map(str, r["cover2"]["periods"])), str(r["genera"][0]), str(r["genera"][1]),
                     " + ".join(r["basket"]) or "-", str(r["K2"]), str(r["K2_min"]), str(r["chi"]),
                     str(g["gap"]), str(r["K_ample"]), verdict])
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(head)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"
