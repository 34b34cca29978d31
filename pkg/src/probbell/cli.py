"""Command-line front end: ``probbell {stirling,bell,verify,sweep}``.

Exit status: 0 on success (verify/sweep: every identity held), 1 when an
identity failed, 2 on usage errors. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .bell import bell_bivariate, bell_univariate
from .identities import IdentityId, IdentityReport, sweep, verify
from .moments import DistributionError, make_provider, parse_distribution
from .numeric import format_rational, parse_rational
from .stirling import prob_stirling2

IDENTITY_NAMES = [i.short for i in IdentityId]
FORMATS = ("pretty", "json", "csv")


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return v


def _r_list(text: str) -> list[int]:
    return [_nonneg(t) for t in text.split(",") if t.strip()]


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _report_row(rep: IdentityReport, timing: bool) -> dict:
    d = rep.to_dict()
    if not timing:
        d["elapsed_ms"] = 0.0
    else:
        d["elapsed_ms"] = round(d["elapsed_ms"], 3)
    return d


def _pretty_report(d: dict, note: str = "") -> str:
    lines = [
        f"identity: {d['identity']}  m={d['m']} n={d['n']} r={d['r']}  dist={d['dist']}",
        f"  lhs: {d['lhs']}",
        f"  rhs: {d['rhs']}",
        f"  equal={'true' if d['equal'] else 'false'}  elapsed_ms={d['elapsed_ms']}",
    ]
    if note:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


# -- subcommands ------------------------------------------------------------


def cmd_stirling(args, out) -> int:
    provider = make_provider(args.dist)
    rows = [
        [format_rational(prob_stirling2(provider, n, k, args.r)) for k in range(n + 1)]
        for n in range(args.n_max + 1)
    ]
    if args.format == "csv":
        out.write(_csv_text(rows))
    elif args.format == "json":
        doc = {"dist": str(args.dist), "r": args.r, "n_max": args.n_max, "rows": rows}
        out.write(json.dumps(doc) + "\n")
    else:
        width = max(len(v) for row in rows for v in row)
        label = len(str(args.n_max))
        for n, row in enumerate(rows):
            out.write(f"n={n:<{label}} " + " ".join(v.rjust(width) for v in row) + "\n")
    return 0


def cmd_bell(args, out) -> int:
    provider = make_provider(args.dist)
    build = bell_bivariate if args.bivariate else bell_univariate
    poly = build(provider, args.n, args.r)
    if args.at_x is not None:
        poly = poly.subs_x(args.at_x)
    if args.at_y is not None:
        poly = poly.subs_y(args.at_y)
    if args.format == "csv":
        rows = [("x_degree", "y_degree", "coefficient")]
        rows += [(i, j, format_rational(c)) for (i, j), c in poly.sorted_terms()]
        out.write(_csv_text(rows))
    elif args.format == "json":
        doc = {
            "dist": str(args.dist),
            "n": args.n,
            "r": args.r,
            "bivariate": args.bivariate,
            "poly": str(poly),
        }
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(str(poly) + "\n")
    return 0


def _check_identity(name: str) -> IdentityId:
    try:
        return IdentityId.lookup(name)
    except ValueError:
        raise UsageError(
            f"unknown identity {name!r}; choose from {', '.join(IDENTITY_NAMES)}"
        )


def cmd_verify(args, out) -> int:
    ident = _check_identity(args.identity)
    try:
        rep = verify(ident, args.dist, args.m, args.n, args.r)
    except ValueError as exc:
        raise UsageError(str(exc))
    d = _report_row(rep, args.timing)
    if args.format == "json":
        out.write(json.dumps(d) + "\n")
    elif args.format == "csv":
        out.write(_csv_text([IdentityReport.FIELDS, list(d.values())]))
    else:
        out.write(_pretty_report(d, rep.note))
    return 0 if rep.equal else 1


def cmd_sweep(args, out) -> int:
    ident = _check_identity(args.identity)
    r_values = args.r if args.r is not None else [0]
    try:
        reports = sweep(ident, args.dist, args.max_total, r_values, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = [_report_row(rep, args.timing) for rep in reports]
    n_equal = sum(rep.equal for rep in reports)
    summary = f"{n_equal}/{len(reports)} equal"
    if args.format == "json":
        doc = {"reports": rows, "summary": summary, "all_equal": n_equal == len(reports)}
        out.write(json.dumps(doc) + "\n")
    elif args.format == "csv":
        out.write(_csv_text([IdentityReport.FIELDS] + [list(d.values()) for d in rows]))
        print(summary, file=sys.stderr)
    else:
        for d in rows:
            out.write(_pretty_report(d))
        out.write(summary + "\n")
    return 0 if n_equal == len(reports) else 1


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probbell",
        description="Exact probabilistic Stirling numbers, Bell polynomials and "
        "verification of their Spivey-type recurrences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--dist", default="det:1",
                       help="distribution of Y: det:<c>, bernoulli:<p>, "
                       "discrete:(a1,p1);(a2,p2);..., poisson:<lam> (default det:1)")
        p.add_argument("--format", choices=FORMATS, default="pretty")

    p = sub.add_parser("stirling", help="triangle of probabilistic r-Stirling numbers")
    common(p)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--r", type=_nonneg, default=0)
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("bell", help="one probabilistic (bivariate, r-) Bell polynomial")
    common(p)
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--r", type=_nonneg, default=0)
    p.add_argument("--bivariate", action="store_true")
    p.add_argument("--at-x", type=_rational, default=None, help="substitute x")
    p.add_argument("--at-y", type=_rational, default=None, help="substitute y")
    p.set_defaults(func=cmd_bell)

    for name, func in (("verify", cmd_verify), ("sweep", cmd_sweep)):
        p = sub.add_parser(name, help=f"{name} a recurrence identity")
        p.add_argument("identity", help=", ".join(IDENTITY_NAMES))
        common(p)
        p.add_argument("--no-timing", dest="timing", action="store_false",
                       help="report elapsed_ms as 0 for reproducible output")
        if name == "verify":
            p.add_argument("--m", type=_nonneg, required=True)
            p.add_argument("--n", type=_nonneg, required=True)
            p.add_argument("--r", type=_nonneg, default=0)
        else:
            p.add_argument("--max-total", type=_nonneg, default=None,
                           help="largest m+n (default 8 when r=0 only, else 7)")
            p.add_argument("--r", type=_r_list, default=None,
                           help="comma-separated r values (default 0)")
            p.add_argument("--jobs", type=int, default=1)
        p.set_defaults(func=func)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "command", None) == "sweep" and args.max_total is None:
        args.max_total = 8 if not any(args.r or [0]) else 7
    try:
        try:
            args.dist = parse_distribution(args.dist)
        except DistributionError as exc:
            raise UsageError(f"bad --dist: {exc}")
        return args.func(args, out)
    except UsageError as exc:
        print(f"probbell: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
