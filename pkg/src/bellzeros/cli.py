"""Command-line interface: build polynomials, locate zeros, print predictions, check tables.

Exit codes: 0 success, 1 table mismatch, 2 usage error, 3 certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import asymptotics as asy
from . import combos
from .exact import InsufficientRefinementError, RootError, format_rational, parse_rational
from .families import Bell, Eulerian, ModifiedEulerian, MultiplierTransformed, RBell
from .multipliers import parse_multiplier
from .report import (
    ROW_FIELDS,
    CertificationError,
    certified_decimal,
    format_decimal,
    rows_to_csv,
    rows_to_json,
    rows_to_table,
)
from .tables import TABLES, verify_table

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CERT = 0, 1, 2, 3


class UsageError(Exception):
    pass


# argument parsing -------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_family_flags(p: argparse.ArgumentParser, combos_allowed: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bell", action="store_true", help="Bell polynomials B_n")
    g.add_argument("--eulerian", action="store_true", help="Eulerian polynomials E_n")
    g.add_argument("--modified-eulerian", action="store_true", help="modified Eulerian polynomials e_n")
    g.add_argument("--rbell", action="store_true", help="r-Bell polynomials (needs --r)")
    g.add_argument("--multiplier", metavar="SPEC", help="unit, invfact:s, gauss:a or custom:FILE applied to e_n")
    if combos_allowed:
        g.add_argument("--combo", metavar="FILE", help="JSON combination spec")
    p.add_argument("--r", type=_rational, help="r for --rbell, as p/q")


def _add_side_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--positive", action="store_const", dest="side", const="positive",
                   help="combinations: the m-th positive zero")
    g.add_argument("--negative", action="store_const", dest="side", const="negative",
                   help="combinations: the m-th rightmost negative zero (default)")


def _add_output_flags(p: argparse.ArgumentParser, precision: bool = True) -> None:
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--json", action="store_const", dest="format", const="json", help="shorthand for --format json")
    if precision:
        p.add_argument("--sig-digits", type=_positive_int, default=10)
        p.add_argument("--rel-tol", type=_rational, default=asy.DEFAULT_REL_TOL)
        p.add_argument("--threads", type=_positive_int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellzeros",
        description="Exact Bell/Eulerian-type polynomials and their rightmost zeros.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="print exact coefficients, lowest degree first", allow_abbrev=False)
    _add_family_flags(p)
    p.add_argument("-n", type=int, required=True)
    _add_output_flags(p, precision=False)

    p = sub.add_parser("zeros", help="certified zeros nearest the origin", allow_abbrev=False)
    _add_family_flags(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=_positive_int, default=1, help="how many negative zeros")
    _add_output_flags(p)

    p = sub.add_parser("predict", help="closed-form prediction of the m-th zero", allow_abbrev=False)
    _add_family_flags(p)
    _add_side_flags(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=_positive_int, required=True)
    p.add_argument("--exact", action="store_true", help="print the exact rational p/q")
    _add_output_flags(p)

    p = sub.add_parser("verify-table", help="recompute a published table", allow_abbrev=False)
    p.add_argument("table_id", choices=tuple(TABLES))
    _add_output_flags(p)

    p = sub.add_parser("ratio", help="zero/prediction ratios along a list of n", allow_abbrev=False)
    _add_family_flags(p)
    _add_side_flags(p)
    p.add_argument("-m", type=_positive_int, required=True)
    p.add_argument("--n", dest="n_list", type=_n_list, required=True, metavar="LIST")
    _add_output_flags(p)
    return parser


def _family(args):
    """A family identifier or a ComboSpec from the parsed flags."""
    if args.r is not None and not args.rbell:
        raise UsageError("--r is only valid with --rbell")
    if args.bell:
        return Bell()
    if args.eulerian:
        return Eulerian()
    if args.modified_eulerian:
        return ModifiedEulerian()
    if args.rbell:
        if args.r is None:
            raise UsageError("--rbell needs --r")
        return RBell(args.r)
    if args.multiplier:
        return MultiplierTransformed(parse_multiplier(args.multiplier))
    return combos.ComboSpec.load(args.combo)


def _check_precision(args) -> None:
    if not args.rel_tol < Fraction(1, 10 ** (args.sig_digits + 1)):
        raise UsageError(f"--rel-tol must be below 1e-{args.sig_digits + 1} to certify {args.sig_digits} digits")


def _emit(rows: list[dict], fmt: str, fields: Sequence[str]) -> str:
    if fmt == "json":
        return rows_to_json(rows)
    if fmt == "csv":
        return rows_to_csv(rows, fields)
    return rows_to_table(rows, fields)


# commands -------------------------------------------------------------------------

def cmd_family(args) -> str:
    fam = _family(args)
    if args.n < 0:
        raise UsageError("-n must be nonnegative")
    if isinstance(fam, combos.ComboSpec):
        p = combos.combo_poly(fam, args.n)
    else:
        p = asy.family_polynomial(fam, args.n)
    coeffs = [format_rational(c) for c in p.coeffs] or ["0"]
    if args.format == "json":
        return json.dumps(coeffs) + "\n"
    if args.format == "csv":
        return rows_to_csv([{"j": j, "coefficient": c} for j, c in enumerate(coeffs)], ("j", "coefficient"))
    return ", ".join(coeffs) + "\n"


def _zero_rows(label: str, n: int, side: str, p, count: int | None, args) -> list[dict]:
    f, _ = asy.strip_origin(p)
    if side == "positive":
        ivs = asy.isolate_nearest(f, "positive", f.degree)
    else:
        ivs = asy.isolate_nearest(f, "negative", count)
        if len(ivs) < count:
            raise UsageError(f"n = {n} has only {len(ivs)} negative zeros")

    def refine(iv):
        check = lambda est: certified_decimal(est.lo, est.hi, args.sig_digits) is not None
        return asy.refine_certified(f, iv, args.rel_tol, check)

    ests = asy._run(refine, ivs, args.threads)
    return [
        {"family": label, "n": n, "side": side, "index": i, "zero": format_decimal(e.value, args.sig_digits)}
        for i, e in enumerate(ests, start=1)
    ]


def cmd_zeros(args) -> str:
    _check_precision(args)
    fam = _family(args)
    if isinstance(fam, combos.ComboSpec):
        p = combos.combo_poly(fam, args.n)
        if not asy.is_square_free(asy.strip_origin(p)[0]):
            raise UsageError("p_n has repeated zeros; zeros works on square-free polynomials")
        rows = _zero_rows(fam.label(), args.n, "positive", p, None, args)
        rows += _zero_rows(fam.label(), args.n, "negative", p, args.m, args)
    else:
        p = asy.family_polynomial(fam, args.n)
        rows = _zero_rows(fam.label(), args.n, "negative", p, args.m, args)
    fields = ("family", "n", "side", "index", "zero")
    if args.format == "table":
        return "".join(r["zero"] + "\n" for r in rows)
    return _emit(rows, args.format, fields)


def _prediction(fam, side, m: int, n: int):
    if isinstance(fam, combos.ComboSpec):
        return combos.predict_combo(fam, (side or "negative", m), n)
    if side == "positive":
        raise UsageError("--positive applies only to --combo")
    return asy.predict(fam, m, n)


def cmd_predict(args) -> str:
    fam = _family(args)
    pred = _prediction(fam, args.side, args.m, args.n)
    text = format_rational(pred.value) if args.exact else format_decimal(pred.value, args.sig_digits)
    row = {"family": fam.label(), "m": args.m, "n": args.n, "prediction": text}
    if args.format == "table":
        return text + "\n"
    return _emit([row], args.format, ("family", "m", "n", "prediction"))


def cmd_verify_table(args) -> tuple[str, int]:
    _check_precision(args)
    report = verify_table(args.table_id, args.rel_tol, args.threads)
    rows = [
        {"table": c.table_id, "m": c.m, "column": c.column, "expected": c.expected,
         "computed": c.computed, "status": c.status()}
        for c in report.cells
    ]
    fields = ("table", "m", "column", "expected", "computed", "status")
    out = _emit(rows, args.format, fields)
    if args.format == "table":
        out += report.summary() + "\n"
        note = TABLES[args.table_id].note
        if note:
            out += f"note: {note}\n"
        if report.header_values:
            out += "header-form predictions: " + ", ".join(report.header_values) + "\n"
    return out, EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_ratio(args) -> str:
    _check_precision(args)
    fam = _family(args)
    if isinstance(fam, combos.ComboSpec):
        rows = combos.ratio_series_combo(
            fam, (args.side or "negative", args.m), args.n_list, args.rel_tol,
            sig_digits=args.sig_digits, threads=args.threads,
        )
    else:
        if args.side == "positive":
            raise UsageError("--positive applies only to --combo")
        rows = asy.ratio_series(fam, args.m, args.n_list, args.rel_tol,
                                sig_digits=args.sig_digits, threads=args.threads)
    return _emit([r.to_dict(args.sig_digits) for r in rows], args.format, ROW_FIELDS)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.command == "verify-table":
            out, code = cmd_verify_table(args)
        else:
            handler = {"family": cmd_family, "zeros": cmd_zeros, "predict": cmd_predict, "ratio": cmd_ratio}
            out, code = handler[args.command](args), EXIT_OK
    except (CertificationError, InsufficientRefinementError) as exc:
        print(f"bellzeros: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (UsageError, ValueError, TypeError, RootError, OSError) as exc:
        print(f"bellzeros: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
