"""Scalar helpers: rational parsing and dyadic bisection points."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+)?\s*$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, integer-like objects (mpz) and strings to Fraction.

    Floats are rejected: every scalar in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a Fraction or 'p/q' string")
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, "__index__"):
        return Fraction(value.__index__())
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or an exact decimal such as ``"1e-12"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    if _RATIONAL_RE.match(text):
        num, _, den = text.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)
    try:
        # Fraction parses decimal/scientific notation exactly
        return Fraction(text)
    except ValueError:
        raise ValueError(f"not a rational number: {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Dyadic:
    """The number ``mantissa * 2**exponent``."""

    mantissa: int
    exponent: int

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    @classmethod
    def from_fraction(cls, x: Fraction) -> "Dyadic":
        den = x.denominator
        if den & (den - 1):
            raise ValueError(f"{x} is not dyadic")
        return cls(x.numerator, -(den.bit_length() - 1))

    @classmethod
    def between(cls, lo: Fraction, hi: Fraction) -> "Dyadic":
        """A short dyadic inside the middle half of ``(lo, hi)``.

        When ``lo`` and ``hi`` are dyadics of the same scale this is the exact
        midpoint, so repeated bisection keeps power-of-two denominators.
        """
        if not lo < hi:
            raise ValueError("empty interval")
        half = (hi - lo) / 2
        # pick k with 2**-k <= half/2 so rounding the midpoint moves it by <= width/4
        quarter = half / 2
        if quarter >= 1:
            k = -(int(quarter).bit_length() - 1)
        else:
            ceil_inv = -(-quarter.denominator // quarter.numerator)
            k = (ceil_inv - 1).bit_length()
        mid = (lo + hi) / 2
        if k >= 0:
            scaled = mid * (1 << k)
        else:
            scaled = mid / (1 << -k)
        m = round(scaled)
        d = cls(m, -k)
        v = d.to_fraction()
        assert lo < v < hi
        return d

    def __float__(self) -> float:
        return float(self.to_fraction())
