"""Positive multiplier sequences and their action on polynomials."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Sequence, Union

from .exact import Polynomial, as_rational, format_rational
from .families import stirling2_row


class UnverifiedMultiplierWarning(UserWarning):
    """A custom sequence was used without a proof that it preserves real-rootedness."""


@dataclass(frozen=True)
class Unit:
    def value(self, n: int) -> Fraction:
        return Fraction(1)

    def label(self) -> str:
        return "unit"


@dataclass(frozen=True)
class InverseFactorialPower:
    """lambda_n = 1 / (n!)^s: the multiplier (1/n!) applied s times.

    s = 1 turns e_n into B_n; s = 2 gives coefficients S(n, j) / j!.
    """

    s: int

    def __post_init__(self):
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError("InverseFactorialPower needs a positive integer s")

    def value(self, n: int) -> Fraction:
        return Fraction(1, factorial(n) ** self.s)

    def label(self) -> str:
        return f"invfact:{self.s}"


@dataclass(frozen=True)
class GaussFactorial:
    """lambda_n = a^(-n^2) / n!, a rational a > 1."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        if self.a <= 1:
            raise ValueError("GaussFactorial needs a > 1")

    def value(self, n: int) -> Fraction:
        return 1 / (self.a ** (n * n) * factorial(n))

    def label(self) -> str:
        return f"gauss:{format_rational(self.a)}"


@dataclass(frozen=True)
class Custom:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        if not vals:
            raise ValueError("custom multiplier needs at least one value")
        if any(v <= 0 for v in vals):
            raise ValueError("multiplier values must be positive")
        object.__setattr__(self, "values", vals)

    def value(self, n: int) -> Fraction:
        if not 0 <= n < len(self.values):
            raise IndexError(f"custom multiplier defined for 0 <= n < {len(self.values)}, got {n}")
        return self.values[n]

    def label(self) -> str:
        return "custom"

    @classmethod
    def from_json(cls, text: str) -> "Custom":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(v, (str, int)) for v in data):
            raise ValueError('custom multiplier JSON must be an array of "p/q" strings')
        return cls(tuple(as_rational(v) for v in data))

    def to_json(self) -> str:
        return json.dumps([format_rational(v) for v in self.values])


MultiplierSpec = Union[Unit, InverseFactorialPower, GaussFactorial, Custom]


def parse_multiplier(text: str) -> MultiplierSpec:
    """Parse ``unit``, ``invfact:s``, ``gauss:a`` or ``custom:FILE``."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "unit" and not arg:
        return Unit()
    if kind == "invfact" and arg:
        return InverseFactorialPower(int(arg))
    if kind == "gauss" and arg:
        return GaussFactorial(as_rational(arg))
    if kind == "custom" and arg:
        return Custom.from_json(Path(arg).read_text())
    raise ValueError(f"unknown multiplier {text!r}; expected unit, invfact:s, gauss:a or custom:FILE")


def lambda_value(spec: MultiplierSpec, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return spec.value(n)


def ratio_u(spec: MultiplierSpec, m: int) -> Fraction:
    """u_m = lambda_m / lambda_{m+1}."""
    return lambda_value(spec, m) / lambda_value(spec, m + 1)


def is_log_concave_prefix(spec: MultiplierSpec, upto: int) -> bool:
    """lambda_n^2 >= lambda_{n-1} lambda_{n+1} for 1 <= n <= upto."""
    if upto < 1:
        raise ValueError("upto must be positive")
    vals = [lambda_value(spec, n) for n in range(upto + 2)]
    return all(vals[n] ** 2 >= vals[n - 1] * vals[n + 1] for n in range(1, upto + 1))


def _warn_if_custom(spec: MultiplierSpec) -> None:
    if isinstance(spec, Custom):
        warnings.warn(
            "custom multiplier: only positivity and log-concavity of the given prefix are checked",
            UnverifiedMultiplierWarning,
            stacklevel=3,
        )


def apply_to_poly(spec: MultiplierSpec, p: Polynomial) -> Polynomial:
    """sum_j lambda_j a_j x^j for p = sum_j a_j x^j."""
    _warn_if_custom(spec)
    return Polynomial(lambda_value(spec, j) * c for j, c in enumerate(p.coeffs))


def transformed_polynomial(spec: MultiplierSpec, n: int) -> Polynomial:
    """The multiplier applied to e_n: coefficients lambda_j j! S(n, j)."""
    _warn_if_custom(spec)
    row = stirling2_row(n)
    return Polynomial(lambda_value(spec, j) * factorial(j) * s if s else 0 for j, s in enumerate(row))


def builtin_specs() -> Sequence[MultiplierSpec]:
    return (Unit(), InverseFactorialPower(1), InverseFactorialPower(2), GaussFactorial(Fraction(2)))
