"""Certified real-root counting, isolation and refinement.

Counting uses Sturm chains built from a primitive pseudo-remainder sequence.
Isolation uses Descartes' rule of signs with dyadic bisection
(Vincent-Collins-Akritas); negative zeros are found as positive zeros of
p(-x).  Refinement is sign-checked bisection at dyadic points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import gmpy2
from gmpy2 import mpz

from .poly import (
    Polynomial,
    int_derivative,
    int_prem,
    int_primitive,
    sign_at,
    square_free_decomposition,
)
from .rational import Dyadic, as_rational


class RootError(ArithmeticError):
    """Base class for root-finding failures."""


class NotSquareFreeError(RootError):
    pass


class InvalidIntervalError(RootError):
    pass


class InsufficientRefinementError(RootError):
    """Certified intervals overlap; refine further (smaller rel_tol)."""


@dataclass(frozen=True)
class IsolatingInterval:
    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidIntervalError(f"empty interval ({self.lo}, {self.hi})")
        if {self.sign_lo, self.sign_hi} != {-1, 1}:
            raise InvalidIntervalError("endpoint signs must be opposite and nonzero")

    def contains(self, x) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class RootEstimate:
    """A zero known to lie in ``[value - half_width, value + half_width]``."""

    value: Fraction
    half_width: Fraction
    multiplicity: int = 1

    @property
    def lo(self) -> Fraction:
        return self.value - self.half_width

    @property
    def hi(self) -> Fraction:
        return self.value + self.half_width

    @property
    def relative_width(self) -> Fraction:
        if self.value == 0:
            return Fraction(0) if self.half_width == 0 else Fraction(1)
        return self.half_width / abs(self.value)

    def __float__(self) -> float:
        return float(self.value)


# ---------------------------------------------------------------------------
# Sturm chains

def _ints(p: Polynomial) -> tuple:
    if p.is_zero():
        raise ValueError("zero polynomial")
    return p.primitive_ints()[1]


@lru_cache(maxsize=128)
def _sturm_chain_ints(f: tuple) -> tuple:
    chain = [list(f), int_primitive(int_derivative(f))]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = int_prem(a, b)
        if not r:
            break
        k = len(a) - len(b) + 1
        # prem = lc(b)**k * rem; the chain needs -rem up to a positive factor
        neg = -1 if (b[-1] > 0 or k % 2 == 0) else 1
        r = int_primitive(r)
        chain.append([neg * v for v in r])
    return tuple(tuple(q) for q in chain if q)


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    """Sturm sequence of ``p`` (each term scaled by a positive constant)."""
    return [Polynomial.from_ints(q) for q in _sturm_chain_ints(_ints(p))]


def _variations(values: Sequence) -> int:
    count, prev = 0, 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _chain_variations(chain, x: Fraction) -> int:
    return _variations([sign_at(q, x) for q in chain])


def count_real_roots(p: Polynomial, lo, hi) -> int:
    """Number of distinct real zeros of ``p`` in the open interval ``(lo, hi)``."""
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise InvalidIntervalError(f"need lo < hi, got ({lo}, {hi})")
    f = _ints(p)
    if sign_at(f, lo) == 0 or sign_at(f, hi) == 0:
        raise InvalidIntervalError("interval endpoint is a zero of the polynomial")
    if len(f) == 1:
        return 0
    chain = _sturm_chain_ints(f)
    return _chain_variations(chain, lo) - _chain_variations(chain, hi)


def cauchy_bound(p: Polynomial) -> Fraction:
    """``1 + max|c_j| / |c_deg|``: every real zero lies in (-bound, bound)."""
    cs = p.coeffs
    if len(cs) < 2:
        return Fraction(1)
    return 1 + max(abs(c) for c in cs[:-1]) / abs(cs[-1])


# large primes for the modular square-free test
_PRIMES = (2**61 - 1, 2**89 - 1, 2**107 - 1, 2**127 - 1)


def _gcd_degree_mod(a: list, b: list, q: int) -> int:
    """Degree of gcd(a, b) over GF(q); inputs are reduced, trimmed, nonzero."""
    while b:
        inv = pow(b[-1], -1, q)
        while len(a) >= len(b):
            c = a[-1] * inv % q
            shift = len(a) - len(b)
            for i, v in enumerate(b):
                a[i + shift] = (a[i + shift] - c * v) % q
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _square_free_mod(f: Sequence) -> bool:
    """True when f is certified square-free by a gcd modulo some prime.

    A repeated factor g^2 of f survives reduction modulo any prime that does
    not divide lc(f), so a trivial gcd(f, f') there rules it out.  False means
    only "not certified".
    """
    for q in _PRIMES:
        if f[-1] % q == 0:
            continue
        a = [int(v) % q for v in f]
        b = [int(v) % q for v in int_derivative(f)]
        while b and b[-1] == 0:
            b.pop()
        if b and _gcd_degree_mod(a, b, q) == 0:
            return True
    return False


def is_square_free(p: Polynomial) -> bool:
    f = _ints(p)
    if len(f) <= 2 or _square_free_mod(f):
        return True
    chain = _sturm_chain_ints(f)
    return len(chain[-1]) == 1


# ---------------------------------------------------------------------------
# Descartes isolation

def _taylor_shift1(a: Sequence) -> list:
    """Coefficients of a(x + 1)."""
    a = list(a)
    n = len(a)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            a[j] += a[j + 1]
    return a


def _interval_variations(q: Sequence) -> int:
    """Descartes bound for the zeros of ``q`` in (0, 1)."""
    return _variations(_taylor_shift1(q[::-1]))


def _strip_twos(q: list) -> list:
    tz = min((gmpy2.bit_scan1(v) for v in q if v), default=0)
    if tz:
        return [v >> tz for v in q]
    return q


def _positive_bound_exp(f: Sequence) -> int:
    """``s`` with all positive zeros of ``f`` below ``2**s`` (Fujiwara-type bound)."""
    d = len(f) - 1
    lead_bits = abs(f[-1]).bit_length()
    best = None
    for i in range(d):
        if f[i] == 0:
            continue
        # |c_i / c_d| < 2**(bits_i - lead_bits + 1)
        e = abs(f[i]).bit_length() - lead_bits + 1
        k = d - i
        e = -((-e) // k)
        best = e if best is None or e > best else best
    return 1 + (best if best is not None else 0)


def _positive_intervals(f: Sequence) -> Iterator[tuple[Fraction, Fraction]]:
    """Isolate the positive zeros of a square-free integer polynomial with f(0) != 0.

    Yields ``(a, b)`` with exactly one zero in the open interval, or ``(r, r)``
    for a zero hit exactly at a dyadic split point; in increasing order.
    """
    d = len(f) - 1
    if d < 1:
        return
    s = _positive_bound_exp(f)
    if s >= 0:
        q0 = [mpz(f[i]) << (s * i) for i in range(d + 1)]
    else:
        q0 = [mpz(f[i]) << (-s * (d - i)) for i in range(d + 1)]
    stack = [(_strip_twos(q0), 0, 0)]
    while stack:
        q, k, c = stack.pop()
        if q is None:
            # exact zero at a split point, emitted between its two subtrees
            yield c, c
            continue
        v = _interval_variations(q)
        if v == 0:
            continue
        e = s - k
        if v == 1:
            yield _dyadic(c, e), _dyadic(c + 1, e)
            continue
        n = len(q) - 1
        ql = _strip_twos([q[i] << (n - i) for i in range(n + 1)])
        qr = _taylor_shift1(ql)
        mid = None
        if qr[0] == 0:
            mid = _dyadic(2 * c + 1, e - 1)
            qr = qr[1:]
        stack.append((_strip_twos(qr), k + 1, 2 * c + 1))
        if mid is not None:
            stack.append((None, k + 1, mid))
        stack.append((ql, k + 1, 2 * c))


def _dyadic(m: int, e: int) -> Fraction:
    return Fraction(int(m) << e) if e >= 0 else Fraction(int(m), 1 << -e)


def _affine_variations(f: Sequence, a: Fraction, b: Fraction) -> int:
    """Descartes bound for the zeros of ``f`` in the open interval (a, b)."""
    den = a.denominator * b.denominator
    A = mpz(a.numerator * b.denominator)
    W = mpz(b.numerator * a.denominator) - A
    # den**d * f((A + W x)/den) by homogeneous Horner
    acc = [mpz(f[-1])]
    dpow = mpz(1)
    for coeff in reversed(f[:-1]):
        dpow *= den
        nxt = [mpz(0)] * (len(acc) + 1)
        for i, v in enumerate(acc):
            nxt[i] += v * A
            nxt[i + 1] += v * W
        nxt[0] += coeff * dpow
        acc = nxt
    while acc and acc[-1] == 0:
        acc.pop()
    return _interval_variations(acc)


def _isolate_exact_point(f: Sequence, r: Fraction, near_lo: Fraction, near_hi: Fraction) -> IsolatingInterval:
    """Interval around an exact zero ``r`` that excludes every other zero."""
    gaps = [g for g in (r - near_lo, near_hi - r) if g > 0]
    delta = min(gaps) / 2 if gaps else Fraction(1, 2)
    while True:
        lo, hi = r - delta, r + delta
        slo, shi = sign_at(f, lo), sign_at(f, hi)
        if slo and shi and slo != shi and _affine_variations(f, lo, r) == 0 and _affine_variations(f, r, hi) == 0:
            return IsolatingInterval(lo, hi, slo, shi)
        delta /= 2


def _shrink_to_nonzero_ends(f: Sequence, a: Fraction, b: Fraction) -> IsolatingInterval:
    """Pull endpoints that are themselves zeros inward until signs are nonzero."""
    sa, sb = sign_at(f, a), sign_at(f, b)
    step = Fraction(1, 2)
    while sa == 0:
        a2 = a + (b - a) * step
        s2 = sign_at(f, a2)
        if s2 and _affine_variations(f, a, a2) == 0:
            a, sa = a2, s2
        step /= 2
    step = Fraction(1, 2)
    while sb == 0:
        b2 = b - (b - a) * step
        s2 = sign_at(f, b2)
        if s2 and _affine_variations(f, b2, b) == 0:
            b, sb = b2, s2
        step /= 2
    return IsolatingInterval(a, b, sa, sb)


def _finish(f: Sequence, raw: list[tuple[Fraction, Fraction]]) -> list[IsolatingInterval]:
    """Turn raw ordered (a, b)/(r, r) pairs into validated intervals."""
    out = []
    for idx, (a, b) in enumerate(raw):
        if a == b:
            near_lo = raw[idx - 1][1] if idx > 0 else a - 1
            near_hi = raw[idx + 1][0] if idx + 1 < len(raw) else a + 1
            out.append(_isolate_exact_point(f, a, near_lo, near_hi))
        else:
            out.append(_shrink_to_nonzero_ends(f, a, b))
    return _make_disjoint(out)


def _make_disjoint(ivs: list[IsolatingInterval]) -> list[IsolatingInterval]:
    # only intervals around exact split-point zeros can overlap a neighbour, and
    # the overlap holds no zero, so the neighbour is clipped at the shared edge
    ivs = list(ivs)
    for i in range(len(ivs) - 1):
        left, right = ivs[i], ivs[i + 1]
        if left.hi <= right.lo:
            continue
        if right.hi - right.lo <= left.hi - left.lo:
            ivs[i] = IsolatingInterval(left.lo, right.lo, left.sign_lo, right.sign_lo)
        else:
            ivs[i + 1] = IsolatingInterval(left.hi, right.hi, left.sign_hi, right.sign_hi)
    return ivs


def _negated(raw):
    return [(-b, -a) for a, b in raw]


def _reflect_ints(f: Sequence) -> list:
    return [-v if j & 1 else v for j, v in enumerate(f)]


def _strip_origin(f: Sequence) -> tuple[list, int]:
    k = 0
    while k < len(f) and f[k] == 0:
        k += 1
    return list(f[k:]), k


def isolate_real_roots(p: Polynomial, *, certify: bool = True) -> list[IsolatingInterval]:
    """Disjoint isolating intervals for all real zeros of a square-free ``p``, increasing.

    With ``certify`` the total is cross-checked against a Sturm count over
    the Cauchy bound.
    """
    if p.degree < 1:
        raise ValueError("isolate_real_roots needs a nonconstant polynomial")
    f = _ints(p)
    if not is_square_free(p):
        raise NotSquareFreeError("polynomial has a repeated factor; use square_free_part")
    g, at_origin = _strip_origin(f)
    neg = _negated(list(_positive_intervals(_reflect_ints(g))))[::-1]
    pos = list(_positive_intervals(g))
    raw = neg + ([(Fraction(0), Fraction(0))] if at_origin else []) + pos
    intervals = _finish(f, raw)
    if certify:
        bound = cauchy_bound(p)
        total = count_real_roots(p, -bound, bound)
        if total != len(intervals):
            raise RootError(f"isolation found {len(intervals)} zeros but Sturm counts {total}")
    return intervals


def isolate_nearest(p: Polynomial, side: str, count: int) -> list[IsolatingInterval]:
    """The ``count`` zeros of one sign closest to the origin, nearest first.

    ``side`` is ``"negative"`` or ``"positive"``; the zero at the origin (if
    any) is skipped.  Descartes bisection explores nearest-first, so zeros
    farther out are never isolated.  Fewer intervals are returned when that
    side has fewer zeros.
    """
    if side not in ("negative", "positive"):
        raise ValueError("side must be 'negative' or 'positive'")
    f = _ints(p)
    if not is_square_free(p):
        raise NotSquareFreeError("polynomial has a repeated factor; use square_free_part")
    g, _ = _strip_origin(f)
    src = _reflect_ints(g) if side == "negative" else g
    raw = []
    for pair in _positive_intervals(src):
        raw.append(pair)
        if len(raw) > count:
            break
    # one extra neighbour gives exact-point isolation a bound, then is dropped
    if side == "positive":
        return _finish(f, raw)[:count]
    ordered = _negated(raw)[::-1]
    return _finish(f, ordered)[::-1][:count]


# ---------------------------------------------------------------------------
# refinement

def refine_root(p: Polynomial, iv: IsolatingInterval, rel_tol) -> RootEstimate:
    """Bisect ``iv`` at dyadic points until ``half_width / |value| <= rel_tol``."""
    rel_tol = as_rational(rel_tol)
    if not 0 < rel_tol < 1:
        raise ValueError("rel_tol must lie in (0, 1)")
    f = _ints(p)
    lo, hi = iv.lo, iv.hi
    slo, shi = sign_at(f, lo), sign_at(f, hi)
    if slo == 0 or shi == 0 or slo == shi:
        raise InvalidIntervalError("no sign change across the interval")
    if lo < 0 < hi and sign_at(f, Fraction(0)) == 0:
        return RootEstimate(Fraction(0), Fraction(0))
    while True:
        half = (hi - lo) / 2
        mid = lo + half
        if mid != 0 and half <= rel_tol * abs(mid):
            return RootEstimate(mid, half)
        m = Dyadic.between(lo, hi).to_fraction()
        sm = sign_at(f, m)
        if sm == 0:
            return RootEstimate(m, Fraction(0))
        if sm == slo:
            lo = m
        else:
            hi = m


def real_roots(p: Polynomial, rel_tol=Fraction(1, 10**12)) -> list[RootEstimate]:
    """All real zeros of any nonzero ``p`` with multiplicities, increasing."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no isolated zeros")
    found = []
    for factor, mult in square_free_decomposition(p):
        for iv in isolate_real_roots(factor):
            est = refine_root(factor, iv, rel_tol)
            found.append(RootEstimate(est.value, est.half_width, mult))
    found.sort(key=lambda r: r.value)
    return found


def interlaces(zeros_a: Sequence[RootEstimate], zeros_b: Sequence[RootEstimate]) -> bool:
    """Strict interlacing of two decreasing zero lists, decided on certified intervals.

    True iff the longer list has exactly one more zero and each gap between
    its consecutive zeros contains exactly one zero of the shorter list.
    """
    for seq in (zeros_a, zeros_b):
        for x, y in zip(seq, seq[1:]):
            if y.value >= x.value:
                raise ValueError("zero lists must be sorted in decreasing order")
            if not y.hi < x.lo:
                raise InsufficientRefinementError("overlapping certified intervals")
    longer, shorter = (zeros_a, zeros_b) if len(zeros_a) >= len(zeros_b) else (zeros_b, zeros_a)
    if len(longer) != len(shorter) + 1:
        return False
    for s in shorter:
        for z in longer:
            if not (s.hi < z.lo or z.hi < s.lo):
                raise InsufficientRefinementError("overlapping certified intervals")
    for (x, y), s in zip(zip(longer, longer[1:]), shorter):
        # longer is decreasing: y < s < x required, with certified separation
        if not (y.hi < s.lo and s.hi < x.lo):
            return False
    return True
