"""Analysis and search configuration files (YAML).

Grammar (all keys lower case)::

    name: <free text>                     # optional
    group: <catalog name> | {type: ..., ...}
    cover1:                               # C1 -> C1/G
      base_genus: 0
      periods: [2, 2, 2, 2, 4]
      branch: [x, x*y, x, x*y^2, y]       # or the string "[x, x*y, ...]"
      handles: []                         # 2 * base_genus words
    cover2:
      base_genus: 1
      periods: [2]
      enumerate: true                     # instead of branch/handles
    base_choice: auto                     # 1, 2 or auto
    node_budget: 5000000

    search:                               # search configs only
      groups: [D8, G48, {type: cyclic, n: 6}]
      base_genera: [0, 1]
      max_order: 48
      max_period: 7
      max_branch_points: [5, 5]           # r for cover1, s for cover2
      filter: {pg: 1, q: 1, K2: 6, K2_min: 3, chi: 1}
      node_budget: 200000
      max_candidates: 20000
      jobs: 4

Group specs: ``type`` is one of cyclic (n, gen), dihedral (order, gens),
metacyclic (a, b, c, gens), semidirect (kernel_orders, kernel_gens,
acting_order, acting_gen, action), direct_product (factors), permutation
(generators: {name: image list}).  ``relations: ["x^2=1", ...]`` are checked
after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import yaml

from . import catalog
from .groups import FiniteGroup, GroupError, build_group
from .search import SearchConfig
from .vectors import (DEFAULT_NODE_BUDGET, BranchingData, GeneratingVector, SearchBudgetExceeded,
                      VectorError, enumerate_vectors, parse_word_list, validate)


class ConfigError(ValueError):
    pass


@dataclass
class CoverBlock:
    data: BranchingData
    branch: list[str] | None
    handles: list[str]
    enumerate: bool


@dataclass
class AnalysisConfig:
    name: str | None
    group_spec: dict
    cover1: CoverBlock
    cover2: CoverBlock
    base_choice: int | str = "auto"
    node_budget: int = DEFAULT_NODE_BUDGET


def load_yaml(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return doc


def group_spec(raw) -> dict:
    if isinstance(raw, str):
        if raw not in catalog.GROUPS:
            raise ConfigError(f"unknown catalog group {raw!r}; known: {sorted(catalog.GROUPS)}")
        return dict(catalog.GROUPS[raw])
    if isinstance(raw, dict) and "type" in raw:
        return dict(raw)
    raise ConfigError(f"group must be a catalog name or a mapping with 'type', got {raw!r}")


def _words(raw, what: str) -> list[str]:
    if raw is None:
        return []
    if isinstance(raw, str):
        return parse_word_list(raw)
    if isinstance(raw, list):
        return [str(w) for w in raw]
    raise ConfigError(f"{what} must be a list of words or a '[...]' string")


def _cover(raw, key: str) -> CoverBlock:
    if not isinstance(raw, dict):
        raise ConfigError(f"{key} must be a mapping")
    try:
        data = BranchingData(int(raw.get("base_genus", 0)), tuple(int(m) for m in raw.get("periods", [])))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: {exc}") from exc
    enum = bool(raw.get("enumerate", False))
    has_vec = "branch" in raw or "handles" in raw
    if enum == has_vec:
        raise ConfigError(f"{key}: give exactly one of explicit branch/handles or 'enumerate: true'")
    return CoverBlock(data, _words(raw.get("branch"), f"{key}.branch") if has_vec else None,
                      _words(raw.get("handles"), f"{key}.handles"), enum)


def parse_analysis(doc: dict) -> AnalysisConfig:
    for key in ("group", "cover1", "cover2"):
        if key not in doc:
            raise ConfigError(f"missing top-level key {key!r}")
    base_choice = doc.get("base_choice", "auto")
    if base_choice not in (1, 2, "auto"):
        raise ConfigError("base_choice must be 1, 2 or auto")
    budget = int(doc.get("node_budget", DEFAULT_NODE_BUDGET))
    if budget <= 0:
        raise ConfigError("node_budget must be positive")
    return AnalysisConfig(doc.get("name"), group_spec(doc["group"]), _cover(doc["cover1"], "cover1"),
                          _cover(doc["cover2"], "cover2"), base_choice, budget)


def build_vectors(cfg: AnalysisConfig) -> tuple[FiniteGroup, list[GeneratingVector], list[GeneratingVector]]:
    """The group and the candidate vectors for each cover (one each when explicit)."""
    try:
        G = build_group(cfg.group_spec)
    except GroupError as exc:
        raise ConfigError(f"group: {exc}") from exc
    out = []
    for key, block in (("cover1", cfg.cover1), ("cover2", cfg.cover2)):
        if block.enumerate:
            try:
                vs = enumerate_vectors(G, block.data, dedup=True, node_budget=cfg.node_budget)
            except (VectorError, SearchBudgetExceeded) as exc:
                raise ConfigError(f"{key}: {exc}") from exc
        else:
            try:
                v = GeneratingVector.from_words(G, block.data, block.branch, block.handles)
            except GroupError as exc:
                raise ConfigError(f"{key}: {exc}") from exc
            res = validate(v)
            if not res:
                raise ConfigError(f"{key}: not a generating vector ({res.reason})")
            vs = [v]
        out.append(vs)
    return G, out[0], out[1]


def parse_search(doc: dict) -> SearchConfig:
    raw = doc.get("search")
    if not isinstance(raw, dict):
        raise ConfigError("search config needs a 'search' mapping")
    groups = []
    for g in raw.get("groups", []):
        groups.append(g if isinstance(g, str) and g in catalog.GROUPS else group_spec(g))
    try:
        cfg = SearchConfig(
            groups=groups,
            base_genera=tuple(int(x) for x in raw.get("base_genera", (0, 1))),
            max_order=int(raw.get("max_order", 2048)),
            max_period=int(raw.get("max_period", 7)),
            max_branch_points=tuple(int(x) for x in raw.get("max_branch_points", (5, 5))),
            filters=dict(raw.get("filter", {}) or {}),
            node_budget=int(raw.get("node_budget", 200_000)),
            max_candidates=int(raw.get("max_candidates", 20_000)),
            jobs=int(raw["jobs"]) if raw.get("jobs") else None,
            base_choice=doc.get("base_choice", raw.get("base_choice", "auto")),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"search: {exc}") from exc
    if len(cfg.base_genera) != 2 or any(g not in (0, 1) for g in cfg.base_genera):
        raise ConfigError("search.base_genera must be two values from {0, 1}")
    if len(cfg.max_branch_points) != 2:
        raise ConfigError("search.max_branch_points must be [r, s]")
    if min(cfg.max_order, cfg.max_period, cfg.node_budget, cfg.max_candidates) <= 0 or \
            min(cfg.max_branch_points) < 0:
        raise ConfigError("search bounds must be positive")
    unknown = set(cfg.filters) - {"pg", "q", "chi", "K2", "K2_min"}
    if unknown:
        raise ConfigError(f"unknown search filters {sorted(unknown)}")
    return cfg
