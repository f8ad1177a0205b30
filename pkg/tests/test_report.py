import csv
import io
import json
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from bellzeros.report import (
    ROW_FIELDS,
    certified_decimal,
    format_decimal,
    round_sig,
    rows_to_csv,
    rows_to_json,
    rows_to_table,
)

F = Fraction


def test_format_examples():
    assert format_decimal(-F(1, 2**99)) == "-1.577721810e-30"
    assert format_decimal(F(-1483735876, 10**13)) == "-0.0001483735876"
    assert format_decimal(F(1)) == "1.000000000"
    assert format_decimal(F(0)) == "0.000000000"
    assert format_decimal(F(123456789012)) == "1.234567890e+11"
    assert format_decimal(F(12345), 3) == "1.23e+4"
    assert format_decimal(F(1, 100000), 3) == "1.00e-5"


def test_half_even_and_carry():
    assert format_decimal(F(125, 100), 2) == "1.2"
    assert format_decimal(F(135, 100), 2) == "1.4"
    assert format_decimal(F(99999, 10000), 3) == "10.0"
    assert round_sig(F(-99996, 10**9), 4) == (-1, 1000, -4)


@given(st.fractions(min_value=F(-10**12), max_value=F(10**12)).filter(lambda x: x != 0), st.integers(1, 15))
def test_matches_decimal_rounding(x, sig):
    with localcontext() as ctx:
        ctx.prec = 200
        d = Decimal(x.numerator) / Decimal(x.denominator)
        ctx.prec = sig
        ctx.rounding = ROUND_HALF_EVEN
        expected = +d
    assert Decimal(format_decimal(x, sig)) == expected


def test_certified_decimal():
    assert certified_decimal(F(1234567890, 10**9), F(1234567890, 10**9) + F(1, 10**12)) == "1.234567890"
    assert certified_decimal(F(12345678904, 10**10), F(12345678906, 10**10)) is None


def test_csv_json_table():
    rows = [
        {"family": "bell", "m": 1, "n": 100, "zero": "-1.5e-30", "prediction": "-1.5e-30", "ratio": "1.0"},
        {"family": 'combo:"x",y', "m": 2, "n": 20, "zero": "a", "prediction": "b", "ratio": "c"},
    ]
    text = rows_to_csv(rows)
    assert text.startswith("family,m,n,zero,prediction,ratio\r\n")
    assert list(csv.DictReader(io.StringIO(text)))[1]["family"] == 'combo:"x",y'
    js = rows_to_json(rows)
    assert json.dumps(json.loads(js), indent=2) + "\n" == js
    table = rows_to_table(rows)
    assert table.splitlines()[0].split() == list(ROW_FIELDS)
    assert len(table.splitlines()) == 3
