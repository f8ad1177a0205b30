"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored lowest degree first with trailing zeros trimmed; the
zero polynomial is the empty coefficient tuple and has degree -1.

Heavy integer work (pseudo-remainders, gcds, evaluation) runs on primitive
integer coefficient lists backed by ``gmpy2.mpz``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpz

from .rational import as_rational


class Polynomial:
    __slots__ = ("_coeffs", "_hash", "_primitive")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None
        self._primitive = None

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls.one()
        for r in roots:
            p = p * cls((-as_rational(r), 1))
        return p

    # basic accessors --------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def __getitem__(self, j: int) -> Fraction:
        if j < 0:
            raise IndexError("negative exponent")
        return self._coeffs[j] if j < len(self._coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == Polynomial((other,))._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self._coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            elif j == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{j}")
        return " + ".join(terms)

    # arithmetic -------------------------------------------------------
    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return Polynomial(self[j] + other[j] for j in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return Polynomial(c * a for a in self._coeffs)
        other = _coerce(other)
        if not self._coeffs or not other._coeffs:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result, base = Polynomial.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dq = len(rem) - len(other._coeffs)
        if dq < 0:
            return Polynomial.zero(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other._coeffs):
                    rem[k + j] -= q * b
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    # calculus and substitutions ----------------------------------------
    def derivative(self) -> "Polynomial":
        return Polynomial(j * c for j, c in enumerate(self._coeffs) if j)

    def reflect(self) -> "Polynomial":
        """p(-x)."""
        return Polynomial(-c if j & 1 else c for j, c in enumerate(self._coeffs))

    def scale_var(self, a) -> "Polynomial":
        """p(a*x)."""
        a = as_rational(a)
        out, pw = [], Fraction(1)
        for c in self._coeffs:
            out.append(c * pw)
            pw *= a
        return Polynomial(out)

    def shift(self, a) -> "Polynomial":
        """p(x + a) by repeated synthetic division."""
        a = as_rational(a)
        cs = list(self._coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Polynomial(cs)

    def compose(self, q: "Polynomial") -> "Polynomial":
        result = Polynomial.zero()
        for c in reversed(self._coeffs):
            result = result * q + c
        return result

    def reciprocal(self) -> "Polynomial":
        """x^deg * p(1/x)."""
        return Polynomial(reversed(self._coeffs))

    def trailing_zeros(self) -> int:
        """Multiplicity of the zero at the origin (0 for the zero polynomial)."""
        for j, c in enumerate(self._coeffs):
            if c:
                return j
        return 0

    def shift_down(self, k: int) -> "Polynomial":
        """Divide by x**k, which must divide p."""
        if any(self._coeffs[:k]):
            raise ArithmeticError(f"x^{k} does not divide the polynomial")
        return Polynomial(self._coeffs[k:])

    # evaluation --------------------------------------------------------
    def __call__(self, x) -> Fraction:
        return evaluate(self, x)

    # integer view -------------------------------------------------------
    def primitive_ints(self) -> tuple[Fraction, tuple]:
        """``(scale, ints)`` with ``p == scale * sum(ints[j] x^j)``.

        ``ints`` are coprime mpz with a positive leading entry, ``scale`` is a
        Fraction carrying the content and sign.
        """
        if self._primitive is None:
            if not self._coeffs:
                self._primitive = (Fraction(0), ())
            else:
                den = reduce(lcm, (c.denominator for c in self._coeffs), 1)
                ints = [mpz(c.numerator) * (den // c.denominator) for c in self._coeffs]
                g = reduce(gmpy2.gcd, ints, mpz(0))
                if ints[-1] < 0:
                    g = -g
                ints = tuple(v // g for v in ints)
                self._primitive = (Fraction(int(g), den), ints)
        return self._primitive

    @classmethod
    def from_ints(cls, ints: Sequence) -> "Polynomial":
        return cls(int(v) for v in ints)


def _coerce(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial((p,))


def horner_int(ints: Sequence, num, den=1):
    """``den**d * f(num/den)`` for integer coefficients ``ints`` of degree d."""
    if not ints:
        return mpz(0)
    num, den = mpz(num), mpz(den)
    acc = mpz(ints[-1])
    if den == 1:
        for c in reversed(ints[:-1]):
            acc = acc * num + c
        return acc
    dpow = mpz(1)
    for c in reversed(ints[:-1]):
        dpow *= den
        acc = acc * num + c * dpow
    return acc


def evaluate(p: Polynomial, x) -> Fraction:
    """Exact value of ``p`` at the rational ``x`` (Horner's scheme)."""
    x = as_rational(x)
    if p.is_zero():
        return Fraction(0)
    scale, ints = p.primitive_ints()
    d = len(ints) - 1
    value = horner_int(ints, x.numerator, x.denominator)
    return scale * Fraction(int(value), x.denominator**d)


def sign_at(ints: Sequence, x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point (denominator powers are positive)."""
    v = horner_int(ints, x.numerator, x.denominator)
    return (v > 0) - (v < 0)


# integer polynomial algebra -------------------------------------------------

def int_primitive(ints: Sequence) -> list:
    g = reduce(gmpy2.gcd, ints, mpz(0))
    if g == 0:
        return []
    if g == 1:
        return list(ints)
    return [v // g for v in ints]


def int_prem(a: Sequence, b: Sequence) -> list:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b`` over the integers."""
    rem = [mpz(v) for v in a]
    db = len(b) - 1
    lb = b[-1]
    steps = len(rem) - len(b) + 1
    done = 0
    while len(rem) - 1 >= db and rem:
        la = rem[-1]
        shift = len(rem) - 1 - db
        rem = [v * lb for v in rem]
        for i in range(db + 1):
            rem[i + shift] -= la * b[i]
        rem.pop()
        done += 1
        while rem and rem[-1] == 0:
            rem.pop()
    # pad the scaling so the multiplier is exactly lc(b)**steps
    if done < steps and rem:
        factor = lb ** (steps - done)
        rem = [v * factor for v in rem]
    return rem


def int_derivative(ints: Sequence) -> list:
    return [j * ints[j] for j in range(1, len(ints))]


def int_divexact(a: Sequence, b: Sequence) -> list:
    """Exact quotient of integer polynomials; ``b`` must divide ``a`` over Z."""
    rem = [mpz(v) for v in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        if any(rem):
            raise ArithmeticError("division is not exact")
        return []
    quot = [mpz(0)] * (len(rem) - db)
    lb = b[-1]
    for k in range(len(rem) - 1 - db, -1, -1):
        q, r = divmod(rem[k + db], lb)
        if r:
            raise ArithmeticError("division is not exact")
        quot[k] = q
        if q:
            for j in range(db + 1):
                rem[k + j] -= q * b[j]
    if any(rem):
        raise ArithmeticError("division is not exact")
    return quot


def int_gcd(a: Sequence, b: Sequence) -> list:
    """Primitive gcd (positive leading coefficient) via a primitive PRS."""
    a = int_primitive(a)
    b = int_primitive(b)
    if not b:
        out = a
    elif not a:
        out = b
    else:
        if len(a) < len(b):
            a, b = b, a
        while b:
            r = int_prem(a, b)
            a, b = b, int_primitive(r) if r else []
        out = a
    if out and out[-1] < 0:
        out = [-v for v in out]
    return out


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, primitive integer form with positive leading coefficient."""
    _, a = p.primitive_ints()
    _, b = q.primitive_ints()
    return Polynomial.from_ints(int_gcd(a, b))


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def square_free_part(p: Polynomial) -> Polynomial:
    """``p / gcd(p, p')``, primitive with positive leading coefficient."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    _, f = p.primitive_ints()
    if len(f) == 1:
        return Polynomial.one()
    g = int_gcd(f, int_derivative(f))
    return Polynomial.from_ints(int_primitive(int_divexact(f, g)))


def square_free_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """``[(f_k, k)]`` with ``p = c * prod f_k**k``, each f_k square-free, pairwise coprime.

    Uses the repeated-gcd chain ``P_0 = p, P_{i+1} = gcd(P_i, P_i')``; the
    product of the factors of multiplicity >= k is ``P_{k-1} / P_k``.  Only
    nonconstant factors are returned, in increasing multiplicity.
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    _, f = p.primitive_ints()
    chain = [list(f)]
    while len(chain[-1]) > 1:
        cur = chain[-1]
        chain.append(int_gcd(cur, int_derivative(cur)))
    at_least = [int_primitive(int_divexact(chain[k - 1], chain[k])) for k in range(1, len(chain))]
    out = []
    for k, q in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else [mpz(1)]
        exact = int_primitive(int_divexact(q, nxt))
        if len(exact) > 1:
            out.append((Polynomial.from_ints(exact), k))
    return out
