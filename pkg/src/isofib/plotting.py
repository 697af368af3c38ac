"""Figures for reports: fibre dual graphs and the search gap chart.

Everything here reads report dicts (the JSON form), so figures can be
regenerated from saved output without recomputing anything.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "savefig.dpi": 150,
    "figure.autolayout": True,
}

CENTRAL_COLOR = "#c0504d"
STRING_COLOR = "#4f81bd"
MINUS_ONE_COLOR = "#f2a900"


def _layout(components: list[dict]) -> dict[str, tuple[float, float]]:
    strings = sorted({c["string"] for c in components if c["string"] is not None})
    col = {s: i - (len(strings) - 1) / 2 for i, s in enumerate(strings)}
    pos = {}
    for c in components:
        if c["string"] is None:
            pos[c["name"]] = (0.0, 0.0)
        else:
            pos[c["name"]] = (1.6 * col[c["string"]], -float(c["position"]))
    return pos


def _draw_config(ax, config: dict, title: str):
    comps = config["components"]
    pos = _layout(comps)
    for a, b, v in config["intersections"]:
        (xa, ya), (xb, yb) = pos[a], pos[b]
        ax.plot([xa, xb], [ya, yb], color="0.4", lw=1.0, zorder=1)
        if v > 1:
            ax.text((xa + xb) / 2, (ya + yb) / 2, str(v), fontsize=7, color="0.3")
    for c in comps:
        x, y = pos[c["name"]]
        if c["string"] is None:
            color = CENTRAL_COLOR
        elif c["self_intersection"] == -1 and c["genus"] == 0:
            color = MINUS_ONE_COLOR
        else:
            color = STRING_COLOR
        ax.scatter([x], [y], s=180, color=color, zorder=2, edgecolor="k", linewidth=0.5)
        ax.annotate(f"{c['multiplicity']}{c['name']}\n({c['self_intersection']})", (x, y),
                    xytext=(9, -3), textcoords="offset points", fontsize=8)
    ax.set_title(title)
    ax.set_axis_off()
    if pos:
        xs = [p[0] for p in pos.values()]
        ys = [p[1] for p in pos.values()]
        ax.set_xlim(min(xs) - 1.0, max(xs) + 1.6)
        ax.set_ylim(min(ys) - 0.8, max(ys) + 0.8)


def fibre_figure(fibre: dict, label: str = ""):
    """Dual graph of one singular fibre, before and (if needed) after contraction.

    Nodes are labelled with multiplicity and name, self-intersection below.
    """
    panels = 2 if fibre["contracted"] else 1
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, panels, figsize=(3.6 * panels, 3.2), squeeze=False)
        _draw_config(axes[0][0], fibre, f"{label}F = {fibre['expression']}")
        if panels == 2:
            _draw_config(axes[0][1], fibre["final"],
                         f"after contracting {', '.join(fibre['contracted'])}")
    return fig


def _stem(report: dict) -> str:
    name = report.get("name") or report["group"]["name"]
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in name)


def save_fibre_figures(report: dict, outdir: str | Path, stem: str | None = None) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    stem = stem or _stem(report)
    paths = []
    for i, f in enumerate(report["fibres"]):
        fig = fibre_figure(f, f"branch point {f['branch_index']}: ")
        p = out / f"{stem}_fibre{i + 1}.png"
        fig.savefig(p)
        plt.close(fig)
        paths.append(p)
    return paths


def gap_chart(reports: list[dict]):
    """Counts of surfaces per gap 8chi - K^2 of the minimal model, split by ampleness."""
    buckets = {True: Counter(), False: Counter(), None: Counter()}
    for r in reports:
        buckets[r["K_ample"]][r["gate"]["gap"]] += 1
    gaps = sorted({g for c in buckets.values() for g in c})
    labels = {True: "K ample", False: "K not ample", None: "undecided"}
    colors = {True: "#4f81bd", False: "#c0504d", None: "0.7"}
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        bottom = [0] * len(gaps)
        for key in (True, False, None):
            h = [buckets[key][g] for g in gaps]
            if any(h):
                ax.bar([str(g) for g in gaps], h, bottom=bottom, color=colors[key], label=labels[key])
                bottom = [b + x for b, x in zip(bottom, h)]
        ax.set_xlabel("8chi - K^2 (minimal model)")
        ax.set_ylabel("surfaces")
        ax.spines["top"].set_visible(False)
        ax.spines["right"].set_visible(False)
        if reports:
            ax.legend(frameon=False)
    return fig


def save_gap_chart(reports: list[dict], outdir: str | Path, name: str = "search_gaps.png") -> Path:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    fig = gap_chart(reports)
    p = out / name
    fig.savefig(p)
    plt.close(fig)
    return p
