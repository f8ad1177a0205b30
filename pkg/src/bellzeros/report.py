"""Decimal rendering of exact values and CSV/JSON serialization of report rows."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class CertificationError(ArithmeticError):
    """Printed digits could not be certified within the refinement budget."""


def _floor_log10(x: Fraction) -> int:
    """floor(log10(x)) for x > 0, exactly."""
    e = len(str(x.numerator)) - len(str(x.denominator))
    # the digit-length estimate is off by at most one
    while Fraction(10) ** e > x:
        e -= 1
    while Fraction(10) ** (e + 1) <= x:
        e += 1
    return e


def _round_half_even(x: Fraction) -> int:
    q, r = divmod(x.numerator, x.denominator)
    twice = 2 * r
    if twice > x.denominator or (twice == x.denominator and q % 2 == 1):
        q += 1
    return q


def round_sig(x: Fraction, sig: int) -> tuple[int, int, int]:
    """``(sign, digits, exponent)`` with |x| ~= digits * 10**(exponent - sig + 1), half-even."""
    if sig < 1:
        raise ValueError("sig must be positive")
    if x == 0:
        return 0, 0, 0
    s = 1 if x > 0 else -1
    ax = abs(x)
    e = _floor_log10(ax)
    scaled = ax * Fraction(10) ** (sig - 1 - e)
    digits = _round_half_even(scaled)
    if digits == 10**sig:
        digits //= 10
        e += 1
    return s, digits, e


def format_decimal(x, sig: int = 10) -> str:
    """Round to ``sig`` significant digits (half-even), keeping trailing zeros.

    Plain notation for exponents -4..sig-1, otherwise ``d.ddde-XX`` with an
    unpadded exponent, e.g. ``-1.577721810e-30`` and ``-0.0001483735876``.
    """
    x = Fraction(x)
    s, digits, e = round_sig(x, sig)
    if s == 0:
        return "0." + "0" * (sig - 1) if sig > 1 else "0"
    ds = str(digits)
    sign = "-" if s < 0 else ""
    if -4 <= e < sig:
        if e >= 0:
            whole, frac = ds[: e + 1], ds[e + 1 :]
            body = whole + ("." + frac if frac else "")
        else:
            body = "0." + "0" * (-e - 1) + ds
        return sign + body
    mant = ds[0] + ("." + ds[1:] if len(ds) > 1 else "")
    return f"{sign}{mant}e{e:+d}" if e > 0 else f"{sign}{mant}e{e}"


def certified_decimal(lo: Fraction, hi: Fraction, sig: int = 10) -> str | None:
    """The common rendering of every point of [lo, hi], or None if they differ.

    Rounding is monotone, so agreeing endpoints certify the whole interval.
    """
    a, b = format_decimal(lo, sig), format_decimal(hi, sig)
    return a if a == b else None


ROW_FIELDS = ("family", "m", "n", "zero", "prediction", "ratio")


def rows_to_csv(rows: Iterable[Mapping], fields: Sequence[str] = ROW_FIELDS) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row[k] for k in fields})
    return buf.getvalue()


def rows_to_json(rows: Iterable[Mapping]) -> str:
    return json.dumps(list(rows), indent=2) + "\n"


def rows_to_table(rows: Sequence[Mapping], fields: Sequence[str] = ROW_FIELDS) -> str:
    rows = list(rows)
    widths = [max([len(f)] + [len(str(r[f])) for r in rows]) for f in fields]
    lines = ["  ".join(f.rjust(w) for f, w in zip(fields, widths))]
    for r in rows:
        lines.append("  ".join(str(r[f]).rjust(w) for f, w in zip(fields, widths)))
    return "\n".join(lines) + "\n"
