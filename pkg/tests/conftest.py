import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from isofib import catalog  # noqa: E402
from isofib.analysis import analyze, to_report  # noqa: E402
from isofib.config import build_vectors, parse_analysis  # noqa: E402
from isofib.search import SearchConfig, run_search  # noqa: E402

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def example_analysis(k: int):
    cfg = parse_analysis(catalog.example_config(k))
    _, (v1,), (v2,) = build_vectors(cfg)
    return analyze(v1, v2, cfg.base_choice, name=cfg.name, group_spec=cfg.group_spec)


@pytest.fixture(scope="session")
def examples():
    return {k: example_analysis(k) for k in catalog.EXAMPLES}


@pytest.fixture(scope="session")
def example_reports(examples):
    return {k: to_report(a) for k, a in examples.items()}


def catalog_search_config(**kw) -> SearchConfig:
    return SearchConfig(groups=list(catalog.GROUPS), base_genera=(0, 1), max_period=7,
                        max_branch_points=(5, 5), **kw)


@pytest.fixture(scope="session")
def catalog_search():
    """Unfiltered search over the five-group catalog (periods <= 7, r, s <= 5), with its wall time."""
    t = time.perf_counter()
    res = run_search(catalog_search_config(jobs=4, max_candidates=100000))
    return res, time.perf_counter() - t


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
