"""Closed-form predictors for the rightmost zeros and ratio reports against refined zeros.

For each family the m-th negative zero (counted from the origin) behaves like
``-c_m * q_m**n`` for large n.  The helpers here evaluate those predictors
exactly, build the brackets ``(-(1+eps) c, -(1-eps) c)`` around them, and
compare refined zeros against the predictions.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import multipliers as mult
from .exact import (
    IsolatingInterval,
    Polynomial,
    RootError,
    RootEstimate,
    as_rational,
    count_real_roots,
    is_square_free,
    isolate_nearest,
    real_roots,
    refine_root,
    square_free_decomposition,
)
from .exact.poly import sign_at
from .families import (
    Bell,
    Eulerian,
    ModifiedEulerian,
    MultiplierTransformed,
    RBell,
    bell_poly,
    eulerian_poly,
    modified_eulerian_poly,
    r_bell_poly,
)
from .report import CertificationError, certified_decimal, format_decimal

DEFAULT_REL_TOL = Fraction(1, 10**12)
# refinement stops tightening here when digits still straddle a rounding boundary
CERTIFY_FLOOR = Fraction(1, 10**80)

Family = Bell | Eulerian | ModifiedEulerian | RBell | MultiplierTransformed


class BracketEndpointZeroError(ArithmeticError):
    """A bracket endpoint is an exact zero of the polynomial."""


@dataclass(frozen=True)
class Prediction:
    family: object
    m: int
    n: int
    value: Fraction
    formula_id: str


@dataclass(frozen=True)
class BracketInterval:
    m: int
    n: int
    eps: Fraction
    lo: Fraction
    hi: Fraction


# the rho functions ------------------------------------------------------------

def rho(m: int, x) -> Fraction | Decimal:
    """(x + 1) (m/(m+1))^x; exact for integer x, 60-digit Decimal otherwise."""
    if m < 1:
        raise ValueError("m must be positive")
    x = as_rational(x)
    if x < 0:
        raise ValueError("rho is defined for x >= 0")
    if x.denominator == 1:
        return (x + 1) * Fraction(m, m + 1) ** int(x)
    with localcontext() as ctx:
        ctx.prec = 60
        xd = Decimal(x.numerator) / Decimal(x.denominator)
        return (xd + 1) * (xd * (Decimal(m) / Decimal(m + 1)).ln()).exp()


def rho_r(m: int, r, x: int) -> Fraction:
    """(x + r) ((m + r - 1)/(m + r))^x at integer x."""
    r = as_rational(r)
    if m < 1:
        raise ValueError("m must be positive")
    if r <= 0:
        raise ValueError("rho_r needs r > 0")
    if x < 0:
        raise ValueError("rho_r is defined for x >= 0")
    return (x + r) * ((m + r - 1) / (m + r)) ** x


def plateau_value(m: int) -> Fraction:
    """m (m/(m+1))^(m-1), the common value of rho_m at m-1 and m."""
    if m < 1:
        raise ValueError("m must be positive")
    return m * Fraction(m, m + 1) ** (m - 1)


def rho_r_plateau(m: int, r) -> Fraction:
    r = as_rational(r)
    return (m + r - 1) ** m / (m + r) ** (m - 1)


def is_unimodal_with_plateau(values: Sequence[Fraction], m: int) -> bool:
    """Strictly increasing on 0..m-1, equal at m-1 and m, strictly decreasing from m."""
    if len(values) <= m:
        raise ValueError("need values through index m")
    up = all(values[j] < values[j + 1] for j in range(m - 1))
    flat = values[m - 1] == values[m]
    down = all(values[j] > values[j + 1] for j in range(m, len(values) - 1))
    return up and flat and down


def find_cutoff_N(m: int) -> int:
    """Smallest N >= m+1 with rho_m(N) < 1 and (1 + 1/(2(N+1))^2) rho_m(N) < 1."""
    if m < 1:
        raise ValueError("m must be positive")
    N = m + 1
    while True:
        r = rho(m, N)
        if r < 1 and (1 + Fraction(1, (2 * (N + 1)) ** 2)) * r < 1:
            return N
        N += 1


# family polynomials and predictors -------------------------------------------------

def family_polynomial(family: Family, n: int) -> Polynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(family, Bell):
        return bell_poly(n)
    if isinstance(family, Eulerian):
        return eulerian_poly(n)
    if isinstance(family, ModifiedEulerian):
        return modified_eulerian_poly(n)
    if isinstance(family, RBell):
        return r_bell_poly(n, family.r)
    if isinstance(family, MultiplierTransformed):
        return mult.transformed_polynomial(family.spec, n)
    raise TypeError(f"not a single-family identifier: {family!r}; combinations live in bellzeros.combos")


def negative_zero_count(family: Family, n: int) -> int:
    if isinstance(family, RBell):
        return n
    return max(n - 1, 0)


def predict(family: Family, m: int, n: int) -> Prediction:
    """Predicted m-th negative zero (counting from the origin) of the n-th polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    if _is_combo(family):
        raise TypeError("combinations are predicted by bellzeros.combos.predict_combo")
    available = negative_zero_count(family, n)
    if m > available:
        raise ValueError(f"n = {n} has only {available} negative zeros, asked for m = {m}")
    q = Fraction(m, m + 1)
    if isinstance(family, Bell):
        value, tag = -m * q ** (n - 1), "bell"
    elif isinstance(family, Eulerian):
        value, tag = -(q**n), "eulerian"
    elif isinstance(family, ModifiedEulerian):
        value, tag = -(q**n), "modified-eulerian"
    elif isinstance(family, MultiplierTransformed):
        value, tag = -mult.ratio_u(family.spec, m) * q**n, "multiplier"
    elif isinstance(family, RBell):
        r = family.r
        value, tag = -m * ((m + r - 1) / (m + r)) ** n, "r-bell"
    else:
        raise TypeError(f"unknown family {family!r}")
    return Prediction(family, m, n, value, tag)


def _is_combo(family) -> bool:
    return not isinstance(family, (Bell, Eulerian, ModifiedEulerian, RBell, MultiplierTransformed))


def _check_eps(m: int, eps: Fraction) -> None:
    if not 0 < eps < Fraction(1, 2 * (m + 1) ** 2):
        raise ValueError(f"eps must lie in (0, 1/(2(m+1)^2)) = (0, 1/{2 * (m + 1) ** 2}) for m = {m}")


def bracket_interval(family: Family, m: int, n: int, eps) -> BracketInterval:
    """(-(1+eps) c, -(1-eps) c) around the prediction -c."""
    eps = as_rational(eps)
    _check_eps(m, eps)
    c = abs(predict(family, m, n).value)
    return BracketInterval(m, n, eps, -(1 + eps) * c, -(1 - eps) * c)


def default_eps(m: int) -> Fraction:
    return Fraction(1, 2 * (m + 1) ** 2 + 1)


def bracket_sign_check(family: Family, m: int, n: int, eps) -> bool:
    """Whether the full n-th polynomial takes opposite signs at the bracket endpoints."""
    b = bracket_interval(family, m, n, eps)
    _, f = family_polynomial(family, n).primitive_ints()
    s_lo, s_hi = sign_at(f, b.lo), sign_at(f, b.hi)
    if s_lo == 0 or s_hi == 0:
        raise BracketEndpointZeroError(f"bracket endpoint is an exact zero (m={m}, n={n})")
    return s_lo != s_hi


# locating and refining zeros --------------------------------------------------------

def strip_origin(p: Polynomial) -> tuple[Polynomial, int]:
    k = p.trailing_zeros()
    return (p.shift_down(k) if k else p), k


def locate_zero(
    p: Polynomial,
    side: str,
    m: int,
    bracket: tuple[Fraction, Fraction] | None = None,
) -> tuple[Polynomial, IsolatingInterval, int, bool]:
    """Isolate the m-th zero of ``p`` on ``side``, counted outward from the origin.

    Returns ``(f, interval, multiplicity, used_bracket)`` where ``f`` is the
    (square-free) polynomial whose zero the interval isolates.  Zeros are
    isolated nearest-first by Descartes bisection; when the bracket shows a
    sign change inside that isolating interval, the intersection is used as
    the starting interval for refinement.
    """
    f, _ = strip_origin(p)
    if f.degree < 1:
        raise RootError("no nonzero zeros")
    if not is_square_free(f):
        return _locate_with_multiplicity(f, side, m)
    ivs = isolate_nearest(f, side, m)
    if len(ivs) < m:
        raise RootError(f"only {len(ivs)} {side} zeros, asked for m = {m}")
    iv = ivs[m - 1]
    if bracket is not None:
        lo, hi = max(bracket[0], iv.lo), min(bracket[1], iv.hi)
        if lo < hi:
            _, fi = f.primitive_ints()
            s_lo, s_hi = sign_at(fi, lo), sign_at(fi, hi)
            if s_lo and s_hi and s_lo != s_hi:
                return f, IsolatingInterval(lo, hi, s_lo, s_hi), 1, True
    return f, iv, 1, False


def _locate_with_multiplicity(f: Polynomial, side: str, m: int):
    expanded = []
    for factor, k in square_free_decomposition(f):
        for iv in isolate_nearest(factor, side, m):
            expanded.append((abs(iv.lo + iv.hi), factor, iv, k))
    expanded.sort(key=lambda t: t[0])
    ranked = []
    for _, factor, iv, k in expanded:
        ranked.extend([(factor, iv, k)] * k)
    if len(ranked) < m:
        raise RootError(f"only {len(ranked)} {side} zeros, asked for m = {m}")
    factor, iv, k = ranked[m - 1]
    return factor, iv, k, False


def refine_certified(
    f: Polynomial,
    iv: IsolatingInterval,
    rel_tol,
    check: Callable[[RootEstimate], bool] | None = None,
) -> RootEstimate:
    """Refine to ``rel_tol``, then keep tightening 100x while ``check`` fails."""
    rel_tol = as_rational(rel_tol)
    est = refine_root(f, iv, rel_tol)
    tol = rel_tol
    while check is not None and not check(est):
        tol /= 100
        if tol < CERTIFY_FLOOR:
            raise CertificationError("printed digits could not be certified")
        _, fi = f.primitive_ints()
        cur = IsolatingInterval(est.lo, est.hi, sign_at(fi, est.lo), sign_at(fi, est.hi))
        est = refine_root(f, cur, tol)
    return est


@dataclass(frozen=True)
class RatioRow:
    family: str
    m: int
    n: int
    zero: RootEstimate
    prediction: Prediction
    used_bracket: bool

    @property
    def ratio(self) -> Fraction:
        return self.zero.value / self.prediction.value

    @property
    def ratio_bounds(self) -> tuple[Fraction, Fraction]:
        a, b = self.zero.lo / self.prediction.value, self.zero.hi / self.prediction.value
        return (a, b) if a <= b else (b, a)

    def zero_str(self, sig: int = 10) -> str | None:
        return certified_decimal(self.zero.lo, self.zero.hi, sig)

    def ratio_str(self, sig: int = 10) -> str | None:
        lo, hi = self.ratio_bounds
        return certified_decimal(lo, hi, sig)

    def to_dict(self, sig: int = 10) -> dict:
        zero, ratio = self.zero_str(sig), self.ratio_str(sig)
        if zero is None or ratio is None:
            raise CertificationError(f"row m={self.m}, n={self.n} is not certified at {sig} digits")
        return {
            "family": self.family,
            "m": self.m,
            "n": self.n,
            "zero": zero,
            "prediction": format_decimal(self.prediction.value, sig),
            "ratio": ratio,
        }


def digits_check(prediction: Fraction, sig: int) -> Callable[[RootEstimate], bool]:
    def check(est: RootEstimate) -> bool:
        if certified_decimal(est.lo, est.hi, sig) is None:
            return False
        a, b = est.lo / prediction, est.hi / prediction
        return certified_decimal(min(a, b), max(a, b), sig) is not None

    return check


def zero_row(
    label: str,
    p: Polynomial,
    side: str,
    prediction: Prediction,
    bracket: tuple[Fraction, Fraction] | None,
    rel_tol,
    sig_digits: int | None,
) -> RatioRow:
    f, iv, k, used = locate_zero(p, side, prediction.m, bracket)
    check = digits_check(prediction.value, sig_digits) if sig_digits else None
    est = refine_certified(f, iv, rel_tol, check)
    return RatioRow(label, prediction.m, prediction.n, RootEstimate(est.value, est.half_width, k), prediction, used)


def _run(fn, items, threads: int):
    items = list(items)
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def ratio_series(
    family: Family,
    m: int,
    n_values: Iterable[int],
    rel_tol=DEFAULT_REL_TOL,
    *,
    sig_digits: int | None = 10,
    threads: int = 1,
) -> list[RatioRow]:
    """Refined m-th rightmost negative zero vs prediction for each n.

    The prediction bracket is tried first; when it does not certify (small n,
    or the zero has not yet entered it) the zeros nearest the origin are
    isolated directly.  With ``sig_digits`` set, refinement continues past
    ``rel_tol`` until zero and ratio render identically across the interval.
    """

    def one(n: int) -> RatioRow:
        pred = predict(family, m, n)
        eps = default_eps(m)
        c = abs(pred.value)
        bracket = (-(1 + eps) * c, -(1 - eps) * c)
        p = family_polynomial(family, n)
        return zero_row(family.label(), p, "negative", pred, bracket, rel_tol, sig_digits)

    return _run(one, n_values, threads)


def rightmost_negative_zeros(
    family: Family, n: int, count: int, rel_tol=DEFAULT_REL_TOL
) -> list[RootEstimate]:
    """The ``count`` negative zeros nearest the origin, nearest first."""
    p = family_polynomial(family, n)
    f, _ = strip_origin(p)
    return [refine_root(f, iv, rel_tol) for iv in isolate_nearest(f, "negative", count)]


def _relative_position(fi, iv: IsolatingInterval, x: Fraction) -> int:
    """-1, 0 or 1 as the zero isolated by ``iv`` lies below, at or above ``x``."""
    if x <= iv.lo:
        return 1
    if x >= iv.hi:
        return -1
    s = sign_at(fi, x)
    if s == 0:
        return 0
    return -1 if s != iv.sign_lo else 1


def bracket_holds(family: Family, m: int, n: int, eps=None) -> bool:
    """Sign change across the bracket and exactly the m-th zero inside it."""
    eps = default_eps(m) if eps is None else as_rational(eps)
    try:
        if not bracket_sign_check(family, m, n, eps):
            return False
    except BracketEndpointZeroError:
        return False
    b = bracket_interval(family, m, n, eps)
    f, _ = strip_origin(family_polynomial(family, n))
    if not is_square_free(f):
        return count_real_roots(f, b.hi, 0) == m - 1 and count_real_roots(f, b.lo, 0) == m
    _, fi = f.primitive_ints()
    ivs = isolate_nearest(f, "negative", m + 1)
    if len(ivs) < m:
        return False
    for i, iv in enumerate(ivs, start=1):
        above_lo = _relative_position(fi, iv, b.lo) > 0
        below_hi = _relative_position(fi, iv, b.hi) < 0
        inside = above_lo and below_hi
        if inside != (i == m):
            return False
    return True


def discover_n0(family: Family, m: int, n_max: int, eps=None) -> int | None:
    """Smallest n0 such that the bracket holds for every n0 <= n <= n_max.

    Scans downward from n_max; None when it fails already at n_max.
    """
    n0 = None
    n_min = m + 1 if not isinstance(family, RBell) else m
    for n in range(n_max, n_min - 1, -1):
        if not bracket_holds(family, m, n, eps):
            break
        n0 = n
    return n0
