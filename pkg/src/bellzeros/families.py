"""Stirling/Eulerian triangles and the polynomial families built from them."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exact import Polynomial, as_rational


class _Triangle:
    """Row-memoized integer triangle; rows are published only once complete."""

    def __init__(self, first_row, next_row):
        self._rows = [list(first_row)]
        self._next_row = next_row
        self._lock = threading.Lock()

    def row(self, n: int) -> list:
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            while len(rows) <= n:
                rows.append(self._next_row(rows[-1], len(rows)))
        return rows[n]


def _next_stirling(prev: list, n: int) -> list:
    # S(n, j) = j S(n-1, j) + S(n-1, j-1)
    row = [0] * (n + 1)
    for j in range(1, n + 1):
        row[j] = (j * prev[j] if j < n else 0) + prev[j - 1]
    return row


def _next_eulerian(prev: list, n: int) -> list:
    # <n, j> = (j+1) <n-1, j> + (n-j) <n-1, j-1>; row n has entries j = 0..n
    row = [0] * (n + 1)
    for j in range(n + 1):
        a = prev[j] if j < len(prev) else 0
        b = prev[j - 1] if j >= 1 else 0
        row[j] = (j + 1) * a + (n - j) * b
    return row


_STIRLING = _Triangle([1], _next_stirling)
_EULERIAN = _Triangle([1], _next_eulerian)


def stirling2(n: int, j: int) -> int:
    """Stirling number of the second kind S(n, j)."""
    if n < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    if j > n:
        raise ValueError(f"S(n, j) needs j <= n, got ({n}, {j})")
    return _STIRLING.row(n)[j]


def stirling2_row(n: int) -> list[int]:
    return list(_STIRLING.row(n))


def eulerian_number(n: int, j: int) -> int:
    """Eulerian number <n, j>; zero outside 0 <= j <= n-1 (for n >= 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if j < 0 or j > n:
        return 0
    return _EULERIAN.row(n)[j]


def bell_poly(n: int) -> Polynomial:
    """B_n(x) = sum_j S(n, j) x^j."""
    return Polynomial(_STIRLING.row(n))


def eulerian_poly(n: int) -> Polynomial:
    """E_0 = 1 and E_n(x) = sum_{j<n} <n, j> x^j."""
    if n == 0:
        return Polynomial.one()
    return Polynomial(_EULERIAN.row(n)[:n])


def modified_eulerian_poly(n: int) -> Polynomial:
    """e_n(x) = x^n E_n(1 + 1/x) = sum_j j! S(n, j) x^j; zeros in (-1, 0]."""
    return Polynomial(factorial(j) * s for j, s in enumerate(_STIRLING.row(n)))


# r-Stirling numbers ------------------------------------------------------------

_R_TRIANGLES: dict[Fraction, _Triangle] = {}
_R_LOCK = threading.Lock()


def _r_triangle(r: Fraction) -> _Triangle:
    tri = _R_TRIANGLES.get(r)
    if tri is None:
        def step(prev, n):
            # T(n, j) = T(n-1, j-1) + (j + r) T(n-1, j)
            row = [Fraction(0)] * (n + 1)
            for j in range(n + 1):
                a = prev[j - 1] if j >= 1 else 0
                b = (j + r) * prev[j] if j < n else 0
                row[j] = a + b
            return row

        with _R_LOCK:
            tri = _R_TRIANGLES.setdefault(r, _Triangle([Fraction(1)], step))
    return tri


def r_stirling2(n: int, j: int, r) -> Fraction:
    """S_r(n + r, j + r), defined for rational r by

        (x + r)^n = sum_j S_r(n + r, j + r) x (x-1) ... (x-j+1).
    """
    if n < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    if j > n:
        raise ValueError(f"r-Stirling number needs j <= n, got ({n}, {j})")
    return _r_triangle(as_rational(r)).row(n)[j]


def r_bell_poly(n: int, r) -> Polynomial:
    """B_{n,r}(x) = sum_j S_r(n + r, j + r) x^j.

    The constant term is r**n.  (The source writes this as S_r(n, 0) = r^n with
    the unshifted index; here it is always the shifted S_r(n + r, r).)
    """
    return Polynomial(_r_triangle(as_rational(r)).row(n))


# family identifiers --------------------------------------------------------------

@dataclass(frozen=True)
class Bell:
    def label(self) -> str:
        return "bell"


@dataclass(frozen=True)
class Eulerian:
    def label(self) -> str:
        return "eulerian"


@dataclass(frozen=True)
class ModifiedEulerian:
    def label(self) -> str:
        return "modified-eulerian"


@dataclass(frozen=True)
class RBell:
    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", as_rational(self.r))
        if self.r <= 0:
            raise ValueError("r-Bell zero asymptotics need r > 0")

    def label(self) -> str:
        r = self.r
        return f"rbell:{r.numerator}" if r.denominator == 1 else f"rbell:{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class MultiplierTransformed:
    spec: object  # a multipliers.MultiplierSpec

    def label(self) -> str:
        return f"multiplier:{self.spec.label()}"


# identities ----------------------------------------------------------------------

def falling_factorial(j: int) -> Polynomial:
    """x (x-1) ... (x-j+1)."""
    return Polynomial.from_roots(range(j))


def binomial_poly(shift: int, n: int) -> Polynomial:
    """binom(x + shift, n) as a polynomial in x."""
    p = Polynomial.from_roots(range(-shift, -shift + n))
    return p * Fraction(1, factorial(n))


def bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0..B_n from sum_{k<=m} C(m+1, k) B_k = 0, so B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


def zeta_negative(n: int) -> Fraction:
    """zeta(-n) = (-1)^n B_{n+1} / (n + 1) for n >= 0."""
    B = bernoulli_numbers(n + 1)
    return (-1) ** n * B[n + 1] / (n + 1)


@dataclass(frozen=True)
class IdentityCheck:
    identity: str
    n: int
    passed: bool


def verify_identities(n_max: int) -> list[IdentityCheck]:
    """Exact checks of three identities for 0 <= n <= n_max:

    * falling factorials: x^n = sum_j S(n, j) x(x-1)...(x-j+1)
    * Worpitzky: x^n = sum_j <n, j> binom(x + j, n)
    * zeta: E_n(-1) = (2^{n+1} - 4^{n+1}) zeta(-n)
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    B = bernoulli_numbers(n_max + 1)
    report = []
    for n in range(n_max + 1):
        xn = Polynomial.monomial(n)
        lhs = Polynomial.zero()
        for j in range(n + 1):
            lhs = lhs + falling_factorial(j) * stirling2(n, j)
        report.append(IdentityCheck("falling-factorial", n, lhs == xn))

        worp = Polynomial.zero()
        for j in range(n + 1):
            a = eulerian_number(n, j)
            if a:
                worp = worp + binomial_poly(j, n) * a
        report.append(IdentityCheck("worpitzky", n, worp == xn))

        zeta = (-1) ** n * B[n + 1] / (n + 1)
        report.append(IdentityCheck("zeta", n, eulerian_poly(n)(-1) == (2 ** (n + 1) - 4 ** (n + 1)) * zeta))
    return report
