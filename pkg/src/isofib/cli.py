"""Command line: ``isofib analyze | search | hj | example``.

Exit codes: 0 success, 1 invalid input, 2 internal invariant violation,
3 an applicable surface violates one of the K^2 inequalities.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import jsonschema
import yaml

from . import catalog, hj, report
from .analysis import InvariantViolation, analyze, to_report
from .config import ConfigError, build_vectors, load_yaml, parse_analysis, parse_search
from .fibres import FibreError
from .groups import GroupError
from .invariants import InvariantError
from .search import JOBS_ENV, run_search
from .singular import SingularLocusError
from .vectors import VectorError

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_THEOREM = 0, 1, 2, 3

log = logging.getLogger("isofib")


def _format(args) -> str:
    return "json" if args.json else "csv" if args.csv else "text" if args.text else args.default_format


def _add_format(p: argparse.ArgumentParser, default: str):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", action="store_true", help="JSON report (validated against the schema)")
    g.add_argument("--text", action="store_true", help="aligned text report")
    g.add_argument("--csv", action="store_true", help="one CSV summary row per surface")
    p.add_argument("--figures", metavar="DIR", help="also write PNG figures into DIR")
    p.add_argument("-o", "--output", metavar="FILE", help="write the report here instead of stdout")
    p.set_defaults(default_format=default)


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input, so exit 1 rather than argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="isofib", description="Invariants and fibres of (C1 x C2)/G.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="analyze the surface(s) described by a config file")
    p.add_argument("--config", required=True, metavar="FILE")
    _add_format(p, "text")

    p = sub.add_parser("search", help="search a group catalog for surfaces")
    p.add_argument("--config", required=True, metavar="FILE")
    p.add_argument("--jobs", type=int, metavar="N", help=f"worker processes (default ${JOBS_ENV} or 1)")
    _add_format(p, "text")

    p = sub.add_parser("hj", help="Hirzebruch-Jung data of 1/n(1,q)")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)

    p = sub.add_parser("example", help="print a ready-made analysis config")
    p.add_argument("k", type=int, choices=sorted(catalog.EXAMPLES))
    return ap


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    cfg = parse_analysis(load_yaml(args.config))
    G, vs1, vs2 = build_vectors(cfg)
    reports = []
    for v1 in vs1:
        for v2 in vs2:
            a = analyze(v1, v2, cfg.base_choice, name=cfg.name, group_spec=cfg.group_spec)
            reports.append(to_report(a))
    for r in reports:
        report.validate_report(r)
    single = len(reports) == 1 and not (cfg.cover1.enumerate or cfg.cover2.enumerate)
    fmt = _format(args)
    if fmt == "json":
        text = report.dumps(reports[0] if single else reports) + "\n"
    elif fmt == "csv":
        text = report.to_csv(reports)
    else:
        text = "\n".join(report.to_text(r) for r in reports) if reports else "no generating vectors\n"
    _emit(text, args.output)
    if args.figures:
        from . import plotting
        for i, r in enumerate(reports):
            stem = Path(args.config).stem if single else f"{Path(args.config).stem}_{i + 1}"
            for path in plotting.save_fibre_figures(r, args.figures, stem):
                log.info("wrote %s", path)
    return EXIT_THEOREM if any(r["gate"]["violated"] for r in reports) else EXIT_OK


def cmd_search(args) -> int:
    cfg = parse_search(load_yaml(args.config))
    if args.jobs is not None:
        if args.jobs < 1:
            raise ConfigError("--jobs must be positive")
        cfg.jobs = args.jobs
    res = run_search(cfg)
    for r in res.reports:
        report.validate_report(r)
    fmt = _format(args)
    if fmt == "json":
        text = report.dumps({"reports": res.reports, "exhausted": res.exhausted, "skipped": res.skipped,
                             "candidates": res.candidates}) + "\n"
    elif fmt == "csv":
        text = report.to_csv(res.reports)
    else:
        text = report.summary_table(res.reports)
        text += f"{len(res.reports)} surfaces from {res.candidates} candidate signature pairs\n"
        for e in res.exhausted:
            text += f"budget exhausted: {e}\n"
        for s in res.skipped:
            text += f"skipped: {s['group']} ({s['reason']})\n"
    _emit(text, args.output)
    if args.figures:
        from . import plotting
        log.info("wrote %s", plotting.save_gap_chart(res.reports, args.figures))
    for e in res.exhausted:
        print(f"warning: search budget exhausted: {e}", file=sys.stderr)
    return EXIT_THEOREM if any(r["gate"]["violated"] for r in res.reports) else EXIT_OK


def cmd_hj(args) -> int:
    x = hj.expand(args.n, args.q)
    d = hj.dual(args.n, args.q)
    c = hj.corrections(x)
    print(f"1/{args.n}(1,{args.q})")
    print(f"expansion      {args.n}/{args.q} = [{', '.join(map(str, x.b))}]")
    print(f"dual           {args.n}/{args.n - args.q} = [{', '.join(map(str, d.b))}]")
    print(f"discrepancies  {', '.join(map(str, c.discrepancies))}")
    print(f"c = {c.c}   e = {c.e}   B = {c.B}")
    return EXIT_OK


def cmd_example(args) -> int:
    sys.stdout.write(yaml.safe_dump(catalog.example_config(args.k), sort_keys=False, allow_unicode=True))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    handler = {"analyze": cmd_analyze, "search": cmd_search, "hj": cmd_hj, "example": cmd_example}[args.command]
    try:
        return handler(args)
    except (ConfigError, GroupError, VectorError, hj.HJError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantViolation, InvariantError, FibreError, SingularLocusError,
            jsonschema.ValidationError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
