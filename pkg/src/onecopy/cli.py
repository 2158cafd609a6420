"""
Command-line front end.

    onecopy count --pattern "3 2 1" --copies one --n 4
    onecopy map --which f --perm "2 5 1 4 7 3 8 6"
    onecopy map --which Fk --k 4 --perm "4 8 1 5 9 3 2 7 6" --trace
    onecopy table --pattern "4 3 2 1" --pattern "3 4 2 1" --n-max 8 --format csv
    onecopy verify --suite all --max-n 8

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
errors and on inputs outside an operation's domain.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from typing import Sequence

from . import verify
from .core import (
    Permutation, PermutationError, corank_profile, is_decreasing, monotone, occurrences, parse,
)
from .enumeration import (
    CountTable, count_avoiders, count_exactly_one, count_monotone, enumerate_avoiders,
    enumerate_exactly_one,
)
from .maps import (
    F_general, F_general_inverse, F_k, PatternPrecondition, StructureViolation, build_h,
    decompose_unique_321, f, g, g_inverse, trace_F,
)


class UsageError(Exception):
    pass


def _perm(text: str) -> Permutation:
    try:
        return parse(text)
    except PermutationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def cmd_count(args, out) -> int:
    q = args.pattern
    if args.method == "dp":
        if not is_decreasing(q):
            raise UsageError("--method dp only counts decreasing patterns")
        value = count_monotone(args.n, len(q), 0 if args.copies == "avoid" else 1)
    elif args.copies == "avoid":
        value = count_avoiders(args.n, q, args.threads)
    else:
        value = count_exactly_one(args.n, q, args.threads)
    row = {"n": args.n, "pattern": str(q), "copies": args.copies, "count": value}
    if args.format == "plain":
        out.write(f"{value}\n")
    elif args.format == "csv":
        out.write("n,pattern,constraint,count\n")
        out.write(f"{args.n},{q.dotted()},{args.copies},{value}\n")
    else:
        out.write(json.dumps(row) + "\n")
    return 0


def cmd_enumerate(args, out) -> int:
    stream = (enumerate_avoiders if args.copies == "avoid" else enumerate_exactly_one)(
        args.n, args.pattern, args.threads)
    if args.format == "json":
        out.write(json.dumps([list(p) for p in stream]) + "\n")
    elif args.format == "csv":
        out.write("permutation\n")
        for p in stream:
            out.write(p.dotted() + "\n")
    else:
        for p in stream:
            out.write(f"{p}\n")
    return 0


def cmd_map(args, out) -> int:
    p, which = args.perm, args.which
    record: dict = {"which": which, "input": str(p)}
    if which == "g":
        image = g(p)
    elif which == "g-inverse":
        image = g_inverse(p)
    elif which == "f":
        image = f(p)
    elif which == "h":
        image = build_h(decompose_unique_321(p), len(p))
    elif which in ("Fk", "general"):
        if which == "Fk":
            if args.k is None or args.k < 3:
                raise UsageError("--which Fk needs --k of at least 3")
            rho = monotone(args.k - 3)
            image = F_k(p, args.k)
        else:
            rho = args.rho
            image = F_general(p, rho)
        if args.trace and len(rho):
            t = trace_F(p, rho)
            record["intermediate"] = " ".join(map(str, t.intermediate))
            record["blue"] = " ".join(map(str, t.partition.blue_values()))
            record["red"] = " ".join(map(str, t.partition.red_values()))
    elif which == "general-inverse":
        image = F_general_inverse(p, args.rho)
    else:  # argparse restricts the choices
        raise UsageError(f"unknown map {which}")
    record["image"] = " ".join(map(str, image))
    if args.format == "json":
        out.write(json.dumps(record) + "\n")
    else:
        for key in ("blue", "red", "intermediate"):
            if key in record:
                out.write(f"{key}: {record[key]}\n")
        out.write(record["image"] + "\n")
    return 0


def cmd_occurrences(args, out) -> int:
    found = occurrences(args.perm, args.pattern)
    if args.format == "json":
        out.write(json.dumps({"count": len(found), "occurrences": [list(o) for o in found]}) + "\n")
    else:
        for occ in found:
            out.write(" ".join(map(str, occ)) + "\n")
    return 0


def cmd_corank(args, out) -> int:
    prof = corank_profile(args.perm)
    if args.format == "json":
        out.write(json.dumps({"perm": str(args.perm), "coranks": list(prof.coranks)}) + "\n")
    else:
        out.write(" ".join(map(str, prof.coranks)) + "\n")
    return 0


def cmd_table(args, out) -> int:
    patterns = args.pattern or [Permutation((3, 2, 1))]
    copies = args.copies_list or ["avoid", "one"]
    table = CountTable.build(range(args.n_min, args.n_max + 1), patterns, copies, args.threads)
    if args.format == "csv":
        out.write(table.to_csv())
    elif args.format == "json":
        rows = [{"n": r.n, "pattern": str(r.pattern), "constraint": r.constraint,
                 "count": r.count} for r in table.rows]
        out.write(json.dumps(rows) + "\n")
    else:
        width = max((len(str(r.pattern)) for r in table.rows), default=7)
        out.write(f"{'n':>3}  {'pattern':<{width}}  {'constraint':<10}  count\n")
        for r in table.rows:
            out.write(f"{r.n:>3}  {str(r.pattern):<{width}}  {r.constraint:<10}  {r.count}\n")
    return 0


def cmd_verify(args, out) -> int:
    failures = 0
    color = args.format == "plain" and _use_color(out)
    report = open(args.report, "w") if args.report else None
    try:
        for res in verify.run(args.suite, args.max_n, args.threads):
            failures += not res.passed
            if report is not None:
                report.write(res.to_json() + "\n")
            if args.format == "json":
                out.write(res.to_json() + "\n")
            else:
                status = res.status.upper()
                if color:
                    status = ("\033[32m" if res.passed else "\033[31m") + status + "\033[0m"
                params = " ".join(f"{k}={v}" for k, v in res.params.items())
                out.write(f"{status:<4}  {res.check:<20} {params}\n")
            out.flush()
    finally:
        if report is not None:
            report.close()
    if args.format == "plain":
        out.write(f"{failures} failed\n")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onecopy", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="plain"):
        p.add_argument("--format", choices=("plain", "csv", "json"), default=fmt_default)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="worker processes for enumeration (default: all CPUs)")

    p = sub.add_parser("count", help="count avoiders or one-copy permutations")
    p.add_argument("--pattern", type=_perm, required=True)
    p.add_argument("--copies", choices=("avoid", "one"), default="avoid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("enumerate", "dp"), default="enumerate")
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list avoiders or one-copy permutations")
    p.add_argument("--pattern", type=_perm, required=True)
    p.add_argument("--copies", choices=("avoid", "one"), default="avoid")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("map", help="apply g, f, h, F_k or the general injection")
    p.add_argument("--which", required=True,
                   choices=("g", "g-inverse", "f", "h", "Fk", "general", "general-inverse"))
    p.add_argument("--perm", type=_perm, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--rho", type=_perm, default=Permutation())
    p.add_argument("--trace", action="store_true", help="also print the blue/red split "
                   "and the intermediate word")
    common(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("occurrences", help="list copies of a pattern")
    p.add_argument("--perm", type=_perm, required=True)
    p.add_argument("--pattern", type=_perm, required=True)
    common(p)
    p.set_defaults(func=cmd_occurrences)

    p = sub.add_parser("corank", help="co-rank of every entry")
    p.add_argument("--perm", type=_perm, required=True)
    common(p)
    p.set_defaults(func=cmd_corank)

    p = sub.add_parser("table", help="count table over several patterns and lengths")
    p.add_argument("--pattern", type=_perm, action="append")
    p.add_argument("--copies", dest="copies_list", action="append",
                   help="avoid, one or skew:j (repeatable; default avoid and one)")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=8)
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", choices=("all", *verify.SUITES))
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--report", help="also write JSON records to this file")
    common(p, fmt_default="json")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        err.write("onecopy: --threads must be at least 1\n")
        return 2
    try:
        return args.func(args, out)
    except (UsageError, PatternPrecondition, StructureViolation, PermutationError,
            ValueError) as exc:
        err.write(f"onecopy: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
