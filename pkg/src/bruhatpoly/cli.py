"""Command-line front end: compute, verify, scan and export.

Subcommands:

    interval    full JSON report for one Bruhat interval
    table       R-polynomial classes of a group, or the dihedral bound table
    verify      run the named check suite; nonzero exit on any failure
    scan        conjecture scan (interval sums and edge-size tally)
    export-dot  Graphviz rendering of an interval's Bruhat graph

Output is deterministic: identical arguments give byte-identical output,
for any worker count. Exit codes: 0 success, 1 check failure, 2 bad usage.
Set BRUHAT_CACHE_DIR to keep on-disk snapshots of the polynomial memo
tables between runs (one versioned, checksummed file per group).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import analysis, suite
from .coxeter import CoxeterDescriptor, EmptyIntervalError, GroupTable, enumerate_group
from .graph import build_graph, to_dot
from .poly import size as poly_size
from .poly import total as poly_total
from .rpoly import (
    RContext,
    gamma_form_text,
    load_snapshot,
    save_snapshot,
    snapshot_path,
)

USAGE_ERROR = 2
CHECK_FAILURE = 1


class CliError(Exception):
    """Usage-level error: reported cleanly, exit status 2."""


# -- element literals ------------------------------------------------------------


def parse_element(group: GroupTable, text: str) -> int:
    """Parse an element literal: 'e', 'w0', a one-line permutation such as
    '3412' (or '3,4,1,2'), or a word in the generators such as 's1 s2 s1'."""
    s = text.strip()
    if not s:
        raise CliError("empty element literal")
    if s == "e":
        return group.identity
    if s == "w0":
        return group.w0
    if s.startswith("s") or " " in s:
        return _parse_word(group, s)
    if group.descriptor.family == "A":
        return _parse_one_line(group, s)
    raise CliError(
        f"element literal {text!r} not understood for group "
        f"{group.descriptor.spec_string()}; use 'e', 'w0' or a word like 's1 s2 s1'"
    )


def _parse_word(group: GroupTable, s: str) -> int:
    word = []
    for pos, token in enumerate(s.split()):
        if not token.startswith("s"):
            raise CliError(f"word token {token!r} at position {pos} must look like 's1'")
        try:
            idx = int(token[1:])
        except ValueError:
            raise CliError(f"word token {token!r} at position {pos} has no generator index")
        if not 1 <= idx <= group.num_generators:
            raise CliError(
                f"generator {token!r} at position {pos} out of range 1..{group.num_generators}"
            )
        word.append(idx - 1)
    return group.from_word(word)


def _parse_one_line(group: GroupTable, s: str) -> int:
    n = group.descriptor.param + 1
    if "," in s:
        values = []
        for pos, item in enumerate(s.split(",")):
            try:
                values.append(int(item))
            except ValueError:
                raise CliError(f"one-line entry {item!r} at position {pos} is not an integer")
    else:
        values = []
        for pos, ch in enumerate(s):
            if not ch.isdigit():
                raise CliError(f"invalid character {ch!r} at position {pos} in one-line form")
            values.append(int(ch))
    if sorted(values) != list(range(1, n + 1)):
        raise CliError(f"{s!r} is not a permutation of 1..{n}")
    return group.index[tuple(values)]


# -- shared plumbing ----------------------------------------------------------------


def _make_group(spec: str) -> GroupTable:
    try:
        descriptor = CoxeterDescriptor.parse(spec)
        return enumerate_group(descriptor)
    except ValueError as exc:
        raise CliError(str(exc))


def _make_context(group: GroupTable) -> RContext:
    ctx = RContext(group)
    path = snapshot_path(group.descriptor.spec_string())
    if path is not None:
        load_snapshot(ctx, path)
    return ctx


def _maybe_save(ctx: RContext) -> None:
    path = snapshot_path(ctx.group.descriptor.spec_string())
    if path is not None:
        save_snapshot(ctx, path)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- subcommands ------------------------------------------------------------------------


def cmd_interval(args: argparse.Namespace) -> int:
    group = _make_group(args.group)
    ctx = _make_context(group)
    u = parse_element(group, args.u)
    w = parse_element(group, args.w)
    if not group.leq(u, w):
        raise CliError(
            f"{group.display(u)} is not below {group.display(w)} in Bruhat order; "
            "the interval is empty"
        )
    report = analysis.interval_report(ctx, u, w)
    _maybe_save(ctx)
    _emit(_json_text(report.to_json_dict()), args.out)
    return 0


def _r_classes(ctx: RContext) -> list[dict]:
    group = ctx.group
    by_poly: dict[tuple, list[int]] = {}
    for v in group.elements():
        by_poly.setdefault(ctx.r(group.identity, v).coeffs, []).append(v)
    rows = []
    for coeffs, members in by_poly.items():
        gamma = ctx.gamma_vector(group.identity, members[0])
        rows.append({
            "ell": gamma.coxeter_length,
            "absolute_length": gamma.absolute_length,
            "members": [group.display(v) for v in sorted(members)],
            "gamma_form": gamma_form_text(gamma),
            "r": ctx.r(group.identity, members[0]).text(),
            "coeffs": [str(c) for c in coeffs],
            "size": ctx.bruhat_size(group.identity, members[0]),
        })
    rows.sort(key=lambda r: (r["ell"], r["absolute_length"], r["members"][0]))
    for i, row in enumerate(rows):
        row["class"] = i
    return rows


def cmd_table(args: argparse.Namespace) -> int:
    if args.table == "r-polys":
        group = _make_group(args.group)
        ctx = _make_context(group)
        rows = _r_classes(ctx)
        _maybe_save(ctx)
        if args.format == "json":
            _emit(_json_text({"group": args.group, "classes": rows}), args.out)
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["class", "members", "gamma_form", "r", "size"])
            for row in rows:
                writer.writerow([row["class"], " ".join(row["members"]),
                                 row["gamma_form"], row["r"], row["size"]])
            _emit(buf.getvalue(), args.out)
        return 0
    if args.table == "dihedral":
        rows = []
        for n in range(args.max_n + 1):
            d = analysis.dihedral_poly(n)
            rows.append({"n": n, "polynomial": d.text(),
                         "coeffs": [str(c) for c in d.coeffs],
                         "size": poly_size(d), "total": poly_total(d)})
        if args.format == "json":
            _emit(_json_text({"table": "dihedral", "rows": rows}), args.out)
        else:
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["n", "polynomial", "size", "total"])
            for row in rows:
                writer.writerow([row["n"], row["polynomial"], row["size"], row["total"]])
            _emit(buf.getvalue(), args.out)
        return 0
    raise CliError(f"unknown table {args.table!r} (expected 'r-polys' or 'dihedral')")


def cmd_verify(args: argparse.Namespace) -> int:
    _make_group(args.group)  # validate the spec before spending time
    checks = None
    if args.suite and args.suite != "full":
        checks = [c.strip() for c in args.suite.split(",") if c.strip()]
    started = time.perf_counter()
    try:
        results = suite.run_suite(args.group, checks=checks, workers=args.workers,
                                  max_interval_len=args.max_interval_len)
    except ValueError as exc:
        raise CliError(str(exc))
    elapsed = time.perf_counter() - started
    if args.format == "json":
        payload = {
            "group": args.group,
            "checks": [{"name": r.name, "passed": r.passed,
                        "scope": r.scope_size, "detail": r.detail} for r in results],
            "passed": all(r.passed for r in results),
        }
        _emit(_json_text(payload), args.out)
    else:
        _emit(suite.suite_text(args.group, results, args.max_interval_len), args.out)
    suite.save_environment_snapshot(args.group)
    # timing goes to stderr so stdout stays byte-identical across runs
    print(f"verify {args.group}: {elapsed:.2f}s", file=sys.stderr)
    return 0 if all(r.passed for r in results) else CHECK_FAILURE


# groups beyond this order get a sampled scan unless --exhaustive is given
SCAN_SAMPLE_THRESHOLD = 200
SCAN_DEFAULT_SAMPLE = 500

# standing probe intervals that every sampled scan of the group includes;
# the A5 pair carries the famous degree-12 alternating-sign polynomial
SCAN_PROBE_PAIRS = {"A5": (("124356", "564312"),)}


def cmd_scan(args: argparse.Namespace) -> int:
    group = _make_group(args.group)
    extra = []
    pair_specs = list(args.include_pair or ())
    sample = args.sample
    if not args.exhaustive and sample is None and len(group) > SCAN_SAMPLE_THRESHOLD:
        sample = SCAN_DEFAULT_SAMPLE
    if not args.exhaustive:
        pair_specs.extend("..".join(p) for p in SCAN_PROBE_PAIRS.get(args.group, ()))
    for spec in pair_specs:
        try:
            u_text, w_text = spec.split("..")
        except ValueError:
            raise CliError(f"pair {spec!r} must look like 'U..W'")
        extra.append((parse_element(group, u_text), parse_element(group, w_text)))
    report = suite.run_scan(
        args.group,
        workers=args.workers,
        sample=sample,
        seed=args.seed,
        max_interval_len=args.max_interval_len,
        extra_pairs=extra,
        exhaustive=args.exhaustive,
    )
    suite.save_environment_snapshot(args.group)
    _emit(_json_text(report), args.out)
    return 0 if not report["violations"] else CHECK_FAILURE


def cmd_export_dot(args: argparse.Namespace) -> int:
    group = _make_group(args.group)
    u = parse_element(group, args.u)
    w = parse_element(group, args.w)
    if not group.leq(u, w):
        raise CliError(
            f"{group.display(u)} is not below {group.display(w)} in Bruhat order"
        )
    if args.max_interval_len is not None:
        if group.length[w] - group.length[u] > args.max_interval_len:
            raise CliError("interval longer than --max-interval-len")
    graph = build_graph(group, group.interval(u, w))
    _emit(to_dot(graph), args.out)
    return 0


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bruhatpoly",
        description="R-polynomial families on Bruhat intervals of finite Coxeter groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, need_group: bool = True) -> None:
        if need_group:
            p.add_argument("--group", required=True,
                           help="group spec such as A3 or I2:7")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p_int = sub.add_parser("interval", help="JSON report for one interval")
    add_common(p_int)
    p_int.add_argument("--u", required=True, help="bottom element literal")
    p_int.add_argument("--w", required=True, help="top element literal")
    p_int.set_defaults(func=cmd_interval)

    p_tab = sub.add_parser("table", help="R-polynomial classes or dihedral table")
    p_tab.add_argument("--table", required=True, choices=("r-polys", "dihedral"))
    p_tab.add_argument("--group", help="group spec (required for r-polys)")
    p_tab.add_argument("--max-n", type=int, default=8,
                       help="last row of the dihedral table (default 8)")
    p_tab.add_argument("--format", choices=("csv", "json"), default="csv")
    p_tab.add_argument("--out")
    p_tab.set_defaults(func=cmd_table)

    p_ver = sub.add_parser("verify", help="run the named check suite")
    add_common(p_ver)
    p_ver.add_argument("--suite", default="full",
                       help="'full' or comma-separated check names")
    p_ver.add_argument("--workers", type=int, default=1)
    p_ver.add_argument("--max-interval-len", type=int, default=None,
                       help="cap sweep checks at this interval length (partial run)")
    p_ver.add_argument("--format", choices=("text", "json"), default="text")
    p_ver.set_defaults(func=cmd_verify)

    p_scan = sub.add_parser("scan", help="conjecture scan over intervals")
    add_common(p_scan)
    p_scan.add_argument("--workers", type=int, default=1)
    p_scan.add_argument("--sample", type=int, default=None,
                        help="sample this many intervals instead of all")
    p_scan.add_argument("--seed", type=int, default=0)
    p_scan.add_argument("--max-interval-len", type=int, default=None)
    p_scan.add_argument("--include-pair", action="append", default=None,
                        metavar="U..W", help="always include this interval")
    p_scan.add_argument("--exhaustive", action="store_true",
                        help="scan every comparable pair, even in large groups")
    p_scan.set_defaults(func=cmd_scan)

    p_dot = sub.add_parser("export-dot", help="Graphviz view of an interval")
    add_common(p_dot)
    p_dot.add_argument("--u", required=True)
    p_dot.add_argument("--w", required=True)
    p_dot.add_argument("--max-interval-len", type=int, default=None)
    p_dot.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "table" and args.table == "r-polys" and not args.group:
        parser.error("table r-polys requires --group")
    if getattr(args, "workers", 1) is not None and getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except EmptyIntervalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
