"""Command-line entry point: ``matroidh <subcommand> ...``.

Exit codes: 0 success/clean, 1 negative mathematical verdict, 2 usage or
bound error, 3 search budget exhausted.  Machine payloads go to stdout,
human-readable tables to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from typing import Sequence

from .complex_core import from_json
from .errors import BoundExceeded, BudgetExceeded, MatroidHError
from .hvec import h_cover_recursive, h_cover_total, h_onedim_formula, h_stanley_reisner
from .matroid_ops import (
    ClassSpec,
    build_complete,
    build_delta_max,
    build_delta_min,
    build_delta_t,
    build_uniform,
    is_matroid,
    parallel_classes,
)
from .oseq import Budget, enumerate_pure_oseq, format_monomial, is_pure_o_sequence
from .verify_enum import (
    DEFAULT_MAX_P,
    SUITES,
    default_grid,
    enumerate_class,
    run_grid,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ICP_LOW = (1, 4, 10, 13, 12, 9, 3)
ICP_GAP = (1, 4, 10, 13, 13, 9, 3)
ICP_HIGH = (1, 4, 10, 13, 14, 9, 3)

log = logging.getLogger("matroidh")


class UsageError(Exception):
    pass


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"not a comma-separated integer list: {text!r}")
    if not vals:
        raise UsageError("empty integer list")
    return vals


def emit(payload) -> None:
    json.dump(payload, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def note(text: str) -> None:
    print(text, file=sys.stderr)


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    known = {"max_d": int, "max_p": int, "max_a": int, "node_budget": int,
             "time_budget_secs": float, "threads": int}
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = known[key](value.strip('"'))
    return out


# -- construct -------------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.a is None and args.family != "uniform":
        raise UsageError("--a is required")
    a = parse_ints(args.a) if args.a else None
    p = args.p if args.p is not None else (len(a) if a else None)
    if a is not None and p != len(a):
        raise UsageError(f"-p {p} does not match {len(a)} class sizes")
    if args.family == "delta_t":
        m = build_delta_t(ClassSpec(args.d, a, args.t))
    elif args.family == "complete":
        m = build_complete(args.d, a)
    elif args.family == "uniform":
        if p is None:
            raise UsageError("uniform needs -p")
        m = build_uniform(args.d, p)
    elif args.family == "min":
        m = build_delta_min(args.d, p, a)
    else:
        m = build_delta_max(args.d, p, a)
    emit(m.to_json())
    return EXIT_OK


# -- analyze ---------------------------------------------------------------------

def analyze_complex(cx) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "n": cx.n, "facets": len(cx.facets)}
    out["h_stanley_reisner"] = list(h_stanley_reisner(cx, allow_negative=True))
    out["is_matroid"] = is_matroid(cx)
    if not out["is_matroid"]:
        return out
    m = parallel_classes(cx)
    h = h_cover_total(m)
    engines = {"dual": list(h), "recursive": list(h_cover_recursive(m))}
    if m.d == 2 and m.p >= 2:
        engines["onedim"] = list(h_onedim_formula(m.sizes))
    out.update(
        h_cover=list(h),
        type=h[-1],
        d=m.d,
        p=m.p,
        classes=m.class_lists(),
        sizes=list(m.sizes),
        engines=engines,
        engines_agree=len({tuple(v) for v in engines.values()}) == 1,
    )
    return out


def cmd_analyze(args) -> int:
    try:
        with open(args.path) as fh:
            cx = from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read complex from {args.path}: {exc}")
    report = analyze_complex(cx)
    if not report["is_matroid"]:
        note("warning: not a matroid; only the Stanley-Reisner h-vector is reported")
    else:
        note(f"h_cover  {tuple(report['h_cover'])}  type {report['type']}  "
             f"classes {tuple(report['sizes'])}  engines agree: {report['engines_agree']}")
    note(f"h_SR     {tuple(report['h_stanley_reisner'])}")
    emit(report)
    return EXIT_OK


# -- oseq ------------------------------------------------------------------------

_VERDICT_EXIT = {"pure": EXIT_OK, "not_pure": EXIT_NEGATIVE, "budget_exhausted": EXIT_BUDGET}


def cmd_oseq(args) -> int:
    h = parse_ints(args.hvector)
    if h[0] != 1 or any(x < 0 for x in h):
        raise UsageError("h-vector must be nonnegative and start with 1")
    dec = is_pure_o_sequence(h, Budget(args.node_budget, args.time_budget))
    print(dec.verdict)
    if dec.witness:
        print("witness: " + ", ".join(format_monomial(g) for g in dec.witness))
    note(f"nodes {dec.nodes}, {dec.seconds:.3f}s")
    return _VERDICT_EXIT[dec.verdict]


# -- enumerate -------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    a = parse_ints(args.a)
    if args.p is not None and args.p != len(a):
        raise UsageError(f"-p {args.p} does not match {len(a)} class sizes")
    members = enumerate_class(args.d, a, labeled=args.labeled, max_p=args.max_p)
    for m in members:
        row = m.to_json()
        row["h_cover"] = list(h_cover_total(m))
        emit(row)
    note(f"M({args.d},{len(a)},{a}): {len(members)} matroids "
         f"({'labelled' if args.labeled else 'up to isomorphism'})")
    return EXIT_OK


# -- verify ----------------------------------------------------------------------

def csv_rows(results: Sequence[dict]) -> list[dict]:
    """One CSV row per matroid row: family, d, p, a, t, h-vector, type, then extras."""
    out = []
    for res in results:
        for row in res["rows"]:
            if "h" not in row:
                continue
            ts = row.get("delta_t", [])
            out.append({
                "family": "delta_t" if ts else "matroid",
                "d": res["d"],
                "p": res["p"],
                "a": " ".join(map(str, res["a"])),
                "t": " ".join(map(str, ts)),
                "h": " ".join(map(str, row["h"])),
                "type": row["type"],
                "suite": res["suite"],
                "form": row["form"],
                "verdict": row.get("verdict", ""),
            })
    return out


def write_reports(results: Sequence[dict], config: dict, out_dir: str) -> dict:
    os.makedirs(out_dir, exist_ok=True)
    summary = {
        "classes": len(results),
        "matroids": sum(r["count_iso"] for r in results),
        "violations": sum(len(r["violations"]) for r in results),
        "budget_exhausted": sum(r["budget_exhausted"] for r in results),
    }
    summary["clean"] = summary["violations"] == 0 and summary["budget_exhausted"] == 0
    payload = {"schema_version": SCHEMA_VERSION, "config": config,
               "summary": summary, "results": list(results)}
    json_path = os.path.join(out_dir, "report.json")
    csv_path = os.path.join(out_dir, "report.csv")
    with open(json_path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
    rows = csv_rows(results)
    fields = ["family", "d", "p", "a", "t", "h", "type", "suite", "form", "verdict"]
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    return {"schema_version": SCHEMA_VERSION, "summary": summary,
            "json": json_path, "csv": csv_path}


def cmd_verify(args) -> int:
    cfg = {"max_d": args.max_d, "max_p": args.max_p, "max_a": args.max_a,
           "node_budget": args.node_budget, "time_budget_secs": args.time_budget,
           "threads": args.threads}
    if args.config:
        cfg.update(read_config(args.config))
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    if args.a is not None:
        if args.d is None:
            raise UsageError("-a needs -d")
        a = parse_ints(args.a)
        if args.p is not None and args.p != len(a):
            raise UsageError(f"-p {args.p} does not match {len(a)} class sizes")
        grid = [(args.d, a)]
    else:
        grid = default_grid(cfg["max_d"], cfg["max_p"], cfg["max_a"], extras=not args.no_extras)
        if args.d is not None:
            grid = [(d, a) for d, a in grid if d == args.d]
        if args.p is not None:
            grid = [(d, a) for d, a in grid if len(a) == args.p]
    if any(len(a) > DEFAULT_MAX_P for _, a in grid):
        raise BoundExceeded(f"classes with p > {DEFAULT_MAX_P} cannot be enumerated")
    budget = Budget(cfg["node_budget"], cfg["time_budget_secs"])
    results = run_grid(suites, grid, budget, threads=cfg["threads"])
    config = dict(cfg, suites=suites, classes=[[d, list(a)] for d, a in grid])
    info = write_reports(results, config, args.out)
    s = info["summary"]
    for r in results:
        flag = "ok" if not r["violations"] and not r["budget_exhausted"] else "FAIL"
        note(f"{r['suite']:<10} d={r['d']} a={tuple(r['a'])!s:<18} "
             f"matroids={r['count_iso'] or r['count_labeled']:<4} "
             f"violations={len(r['violations'])} {flag}")
    note(f"{s['classes']} class runs, {s['violations']} violations, "
         f"{s['budget_exhausted']} budget exhaustions")
    emit(info)
    if s["violations"]:
        return EXIT_NEGATIVE
    if s["budget_exhausted"]:
        return EXIT_BUDGET
    return EXIT_OK


# -- icp -------------------------------------------------------------------------

def run_icp(node_budget: int | None = 2_000_000) -> dict:
    """Enumerate all pure f-vectors (1, 4, ..., 3) of socle degree 6 and test the three ICP vectors."""
    stats: dict = {}
    found = enumerate_pure_oseq(4, 6, 3, node_budget=node_budget, stats=stats)
    members = set(found)
    status = {str(v): v in members for v in (ICP_LOW, ICP_GAP, ICP_HIGH)}
    confirmed = status[str(ICP_LOW)] and status[str(ICP_HIGH)] and not status[str(ICP_GAP)]
    return {"schema_version": SCHEMA_VERSION, "pure_o_sequences": len(found),
            "candidates": stats["candidates"], "orbits": stats["orbits"],
            "all_subsets": stats["total"], "membership": status, "confirmed": confirmed,
            "sequences": [list(f) for f in found]}


def cmd_icp(args) -> int:
    try:
        report = run_icp(args.node_budget)
    except BudgetExceeded as exc:
        print("budget_exhausted")
        note(str(exc))
        return EXIT_BUDGET
    for v in (ICP_LOW, ICP_GAP, ICP_HIGH):
        note(f"{v}: {'pure' if report['membership'][str(v)] else 'not pure'}")
    note(f"{report['candidates']} candidate sets of {report['all_subsets']}, "
         f"{report['orbits']} orbits, {report['pure_o_sequences']} f-vectors")
    sequences = report.pop("sequences")
    if args.emit_all:
        report["sequences"] = sequences
    emit(report)
    print("counterexample confirmed" if report["confirmed"] else "counterexample NOT confirmed")
    return EXIT_OK if report["confirmed"] else EXIT_NEGATIVE


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matroidh", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="print a family member as matroid JSON")
    c.add_argument("--family", required=True, choices=["delta_t", "complete", "uniform", "min", "max"])
    c.add_argument("-d", type=int, required=True)
    c.add_argument("-p", type=int)
    c.add_argument("-a")
    c.add_argument("-t", type=int, default=0)
    c.set_defaults(func=cmd_construct)

    an = sub.add_parser("analyze", help="h-vectors, type and classes of a JSON complex")
    an.add_argument("path")
    an.set_defaults(func=cmd_analyze)

    o = sub.add_parser("oseq", help="decide whether an h-vector is a pure O-sequence")
    o.add_argument("hvector")
    o.add_argument("--node-budget", type=int, default=Budget.nodes)
    o.add_argument("--time-budget", type=float, default=Budget.seconds)
    o.set_defaults(func=cmd_oseq)

    e = sub.add_parser("enumerate", help="list the matroids of a class M(d, p, a)")
    e.add_argument("-d", type=int, required=True)
    e.add_argument("-p", type=int)
    e.add_argument("-a", required=True)
    e.add_argument("--labeled", action="store_true")
    e.add_argument("--max-p", type=int, default=DEFAULT_MAX_P)
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run verification suites over a grid")
    v.add_argument("suite", choices=[*SUITES, "all"])
    v.add_argument("-d", type=int)
    v.add_argument("-p", type=int)
    v.add_argument("-a")
    v.add_argument("--max-d", type=int, default=3)
    v.add_argument("--max-p", type=int, default=5)
    v.add_argument("--max-a", type=int, default=3)
    v.add_argument("--no-extras", action="store_true", help="skip the d=4, p=5 extra class")
    v.add_argument("--node-budget", type=int, default=Budget.nodes)
    v.add_argument("--time-budget", type=float, default=Budget.seconds)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--config")
    v.add_argument("--out", default="reports")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("icp", help="reproduce the interval-conjecture counterexample")
    i.add_argument("--emit-all", action="store_true")
    i.add_argument("--node-budget", type=int, default=2_000_000)
    i.set_defaults(func=cmd_icp)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, BoundExceeded) as exc:
        note(f"error: {exc}")
        return EXIT_USAGE
    except MatroidHError as exc:
        if isinstance(exc, ValueError):
            note(f"error: {exc}")
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
