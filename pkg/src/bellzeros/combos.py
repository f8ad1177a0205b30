"""Linear combinations of consecutive Bell or modified Eulerian polynomials.

For gammas ``(1, g_1, ..., g_K)`` the combination is
``p_n = sum_j g_j F_{n-j}`` with ``F_i = 0`` for ``i < 0``.  The signature
polynomial ``P(x) = sum_j g_j x^(K-j)`` decides which integers produce
positive zeros (the set H, sign changes of P between l and l+1) and which
produce negative ones (the complement G).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from pathlib import Path
from typing import Iterable

from .asymptotics import (
    DEFAULT_REL_TOL,
    Prediction,
    RatioRow,
    _run,
    default_eps,
    zero_row,
)
from .exact import (
    Polynomial,
    as_rational,
    cauchy_bound,
    count_real_roots,
    format_rational,
    square_free_decomposition,
)
from .families import bell_poly, modified_eulerian_poly

BASES = ("bell", "modified-eulerian")


@dataclass(frozen=True)
class ComboSpec:
    base: str
    gammas: tuple[Fraction, ...]

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"base must be one of {BASES}, got {self.base!r}")
        gammas = tuple(as_rational(g) for g in self.gammas)
        if len(gammas) < 2:
            raise ValueError("need at least two gammas (K >= 1)")
        if gammas[0] != 1:
            raise ValueError("gamma_0 must be 1")
        object.__setattr__(self, "gammas", gammas)

    @property
    def K(self) -> int:
        return len(self.gammas) - 1

    def label(self) -> str:
        return f"combo:{self.base}"

    @classmethod
    def from_dict(cls, data: dict) -> "ComboSpec":
        if not isinstance(data, dict) or set(data) != {"base", "gammas"}:
            raise ValueError('combo JSON must be {"base": ..., "gammas": [...]}')
        gammas = data["gammas"]
        if not isinstance(gammas, list) or not all(isinstance(g, (str, int)) for g in gammas):
            raise ValueError('gammas must be an array of "p/q" strings')
        return cls(data["base"], tuple(as_rational(g) for g in gammas))

    @classmethod
    def from_json(cls, text: str) -> "ComboSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "ComboSpec":
        return cls.from_json(Path(path).read_text())

    def to_json(self) -> str:
        return json.dumps({"base": self.base, "gammas": [format_rational(g) for g in self.gammas]})


# the worked example: P(x) = (x - 3/2)(x - 5/2)(x - 9/2)
EXAMPLE = ComboSpec("bell", (Fraction(1), Fraction(-17, 2), Fraction(87, 4), Fraction(-135, 8)))


def signature_poly(spec: ComboSpec) -> Polynomial:
    """P(x) = sum_j gamma_j x^(K - j); monic of degree K."""
    return Polynomial(reversed(spec.gammas))


@dataclass(frozen=True)
class SignClassification:
    H: tuple[int, ...]
    bound: int
    assumption_ok: bool
    P: Polynomial = field(repr=False, compare=False)

    def g(self, m: int) -> int:
        """m-th element of G, the positive integers outside H."""
        if m < 1:
            raise ValueError("m must be positive")
        l = 0
        while m:
            l += 1
            if l not in self.H:
                m -= 1
        return l

    def h(self, m: int) -> int:
        if not 1 <= m <= len(self.H):
            raise ValueError(f"H has {len(self.H)} elements, asked for m = {m}")
        return self.H[m - 1]

    def G_prefix(self, upto: int) -> list[int]:
        return [l for l in range(1, upto + 1) if l not in self.H]


def classify(spec: ComboSpec) -> SignClassification:
    """H = {l >= 1 : P(l) P(l+1) < 0}, scanned up to the Cauchy bound of P."""
    P = signature_poly(spec)
    bound = ceil(cauchy_bound(P))
    values = [P(l) for l in range(1, bound + 2)]
    H = tuple(l for l in range(1, bound + 1) if values[l - 1] * values[l] < 0)
    ok = all(v != 0 for v in values[:bound])
    return SignClassification(H, bound, ok, P)


def _base_poly(base: str, i: int) -> Polynomial:
    if i < 0:
        return Polynomial.zero()
    return bell_poly(i) if base == "bell" else modified_eulerian_poly(i)


def combo_poly(spec: ComboSpec, n: int) -> Polynomial:
    """p_n = sum_j gamma_j F_{n-j}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Polynomial.zero()
    for j, g in enumerate(spec.gammas):
        if g:
            total = total + _base_poly(spec.base, n - j) * g
    return total


def lift(spec: ComboSpec, p: Polynomial) -> Polynomial:
    """The operator taking p_n to p_{n+1} for n >= K."""
    x = Polynomial.x()
    if spec.base == "bell":
        return x * (p + p.derivative())
    return x * ((Polynomial((1, 1)) * p).derivative())


@dataclass(frozen=True)
class ZeroSignature:
    pos: int
    neg: int
    at_origin: int
    non_real: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.pos, self.neg, self.at_origin, self.non_real)


def zero_signature(spec: ComboSpec, n: int) -> ZeroSignature:
    """Zero counts with multiplicity: positive, negative, at the origin, non-real."""
    p = combo_poly(spec, n)
    if p.is_zero():
        raise ValueError("p_n is the zero polynomial")
    at_origin = p.trailing_zeros()
    q = p.shift_down(at_origin)
    pos = neg = 0
    if q.degree >= 1:
        for factor, k in square_free_decomposition(q):
            b = cauchy_bound(factor)
            pos += k * count_real_roots(factor, 0, b)
            neg += k * count_real_roots(factor, -b, 0)
    return ZeroSignature(pos, neg, at_origin, p.degree - pos - neg - at_origin)


def _which(which) -> tuple[str, int]:
    side, m = which
    if side not in ("positive", "negative"):
        raise ValueError("which must be ('positive', m) or ('negative', m)")
    if m < 1:
        raise ValueError("m must be positive")
    return side, m


def predict_combo(spec: ComboSpec, which, n: int) -> Prediction:
    """Predicted m-th positive (increasing) or m-th rightmost negative zero of p_n.

    With l = h_m or g_m the predictor is

        Bell base:               -l P(l)/P(l+1) (l/(l+1))^(n-K-1)
        modified Eulerian base:  -P(l)/P(l+1) (l/(l+1))^(n-K)

    The second form is the same coefficient-ratio estimate for e_n, whose
    coefficients j! S(n, j) grow like j^n rather than j^n / j!.
    """
    side, m = _which(which)
    cls = classify(spec)
    if not cls.assumption_ok:
        raise ValueError("P vanishes at a positive integer; the predictor does not apply")
    if n <= spec.K:
        raise ValueError(f"need n > K = {spec.K}")
    l = cls.h(m) if side == "positive" else cls.g(m)
    P = cls.P
    q = Fraction(l, l + 1)
    if spec.base == "bell":
        value = -l * P(l) / P(l + 1) * q ** (n - spec.K - 1)
    else:
        value = -P(l) / P(l + 1) * q ** (n - spec.K)
    return Prediction(spec, m, n, value, f"combo-{spec.base}-{side}")


def header_prediction(spec: ComboSpec, which, n: int) -> Fraction:
    """-P(l) l^(n-2) / (P(l+1) (l+1)^(n-3)), the form printed above the example tables."""
    side, m = _which(which)
    cls = classify(spec)
    l = cls.h(m) if side == "positive" else cls.g(m)
    P = cls.P
    return -P(l) * Fraction(l) ** (n - 2) / (P(l + 1) * Fraction(l + 1) ** (n - 3))


def ratio_series_combo(
    spec: ComboSpec,
    which,
    n_values: Iterable[int],
    rel_tol=DEFAULT_REL_TOL,
    *,
    sig_digits: int | None = 10,
    threads: int = 1,
) -> list[RatioRow]:
    """Like ``asymptotics.ratio_series`` for the m-th positive or negative zero of p_n."""
    side, m = _which(which)

    def one(n: int) -> RatioRow:
        pred = predict_combo(spec, (side, m), n)
        c = pred.value
        eps = default_eps(m)
        bracket = tuple(sorted(((1 - eps) * c, (1 + eps) * c)))
        p = combo_poly(spec, n)
        return zero_row(f"{spec.label()}:{side}", p, side, pred, bracket, rel_tol, sig_digits)

    return _run(one, n_values, threads)
