from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellzeros.exact import (
    Dyadic,
    InsufficientRefinementError,
    InvalidIntervalError,
    IsolatingInterval,
    NotSquareFreeError,
    Polynomial,
    RootEstimate,
    as_rational,
    cauchy_bound,
    count_real_roots,
    derivative,
    evaluate,
    gcd,
    interlaces,
    is_square_free,
    isolate_nearest,
    isolate_real_roots,
    parse_rational,
    real_roots,
    refine_root,
    square_free_decomposition,
    square_free_part,
)
from bellzeros.families import bell_poly, eulerian_poly, modified_eulerian_poly

F = Fraction
E3 = Polynomial([1, 4, 1])


def monic_scaled(p: Polynomial) -> Polynomial:
    return p * (1 / p.leading)


# rationals and dyadics


def test_parse_rational_forms():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7") == -7
    assert parse_rational("1e-12") == F(1, 10**12)
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)


@given(st.fractions(), st.fractions())
def test_dyadic_between_is_strictly_inside(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    d = Dyadic.between(lo, hi)
    v = d.to_fraction()
    assert lo < v < hi
    assert v.denominator & (v.denominator - 1) == 0


def test_dyadic_roundtrip():
    d = Dyadic(3, -5)
    assert d.to_fraction() == F(3, 32)
    assert Dyadic.from_fraction(F(3, 32)).to_fraction() == F(3, 32)


# polynomials


def test_eval_examples():
    assert evaluate(Polynomial([0, 1, 3, 1]), 1) == 5
    assert evaluate(Polynomial.zero(), F(7, 3)) == 0
    assert Polynomial([0, 1, 3, 1])(F(-1, 2)) == F(-1, 2) + F(3, 4) - F(1, 8)


def test_eval_near_zero_of_e3():
    iv = isolate_real_roots(E3)[1]
    est = refine_root(E3, iv, F(1, 10**20))
    # |p(v)| <= max|p'| on the interval times the half width
    bound = 8 * est.half_width
    assert abs(E3(est.value)) <= bound


def test_derivative_examples():
    assert derivative(Polynomial([0, 1, 3, 1])) == Polynomial([1, 6, 3])
    assert derivative(Polynomial([5])).is_zero()
    d = derivative(Polynomial.monomial(9))
    assert d.degree == 8 and d.leading == 9


def test_zero_polynomial_representation():
    z = Polynomial.zero()
    assert z.degree == -1 and z.is_zero()
    assert Polynomial([0, 0, 0]) == z
    assert Polynomial([1, 2, 0, 0]).degree == 1


@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=6),
    st.lists(st.integers(-20, 20), min_size=1, max_size=6),
)
def test_divmod_identity(a, b):
    pa, pb = Polynomial(a), Polynomial(b)
    if pb.is_zero():
        return
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert r.degree < pb.degree


@given(st.lists(st.fractions(max_denominator=9), min_size=1, max_size=5), st.fractions(max_denominator=9))
def test_evaluation_matches_expanded_sum(cs, x):
    p = Polynomial(cs)
    assert p(x) == sum(c * x**j for j, c in enumerate(cs))


def test_square_free_part_examples():
    p = Polynomial.from_roots([-1, -1, 0])
    assert monic_scaled(square_free_part(p)) == Polynomial.from_roots([-1, 0])
    assert monic_scaled(square_free_part(E3)) == monic_scaled(E3)
    b5 = bell_poly(5)
    assert monic_scaled(square_free_part(b5)) == monic_scaled(b5)
    with pytest.raises(ValueError):
        square_free_part(Polynomial.zero())


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 3)), min_size=1, max_size=4, unique_by=lambda t: t[0]))
@settings(max_examples=60)
def test_square_free_decomposition_recovers_multiplicities(roots):
    p = Polynomial.one()
    for r, k in roots:
        p = p * Polynomial.from_roots([r] * k)
    p = p * 3
    found = []
    for factor, k in square_free_decomposition(p):
        found += [(est, k) for est in real_roots(factor)]
    assert len(found) == len(roots)
    for r, k in roots:
        assert [m for est, m in found if est.lo <= r <= est.hi] == [k]


def test_gcd_of_coprime_is_constant():
    assert gcd(E3, Polynomial([1, 1])).degree == 0


# counting and isolation


def test_count_real_roots_examples():
    b4 = bell_poly(4).shift_down(1)
    assert count_real_roots(b4, -cauchy_bound(b4), 0) == 3
    assert count_real_roots(E3, -1, 0) == 1
    assert count_real_roots(E3, 1, 5) == 0


def test_count_real_roots_errors():
    with pytest.raises(InvalidIntervalError):
        count_real_roots(E3, 0, -1)
    with pytest.raises(InvalidIntervalError):
        count_real_roots(Polynomial([-1, 1]), 0, 1)


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=7), st.fractions(), st.fractions())
@settings(max_examples=80)
def test_sign_change_gives_odd_count(cs, a, b):
    p = Polynomial(cs)
    if p.degree < 1 or not is_square_free(p) or a >= b:
        return
    if p(a) * p(b) < 0:
        assert count_real_roots(p, a, b) % 2 == 1


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=8))
@settings(max_examples=80)
def test_isolation_matches_sturm_total(cs):
    p = Polynomial(cs)
    if p.degree < 1:
        return
    q = square_free_part(p)
    if q.degree < 1:
        return
    ivs = isolate_real_roots(q)
    M = cauchy_bound(q)
    assert len(ivs) == count_real_roots(q, -M, M)
    for left, right in zip(ivs, ivs[1:]):
        assert left.hi <= right.lo
    for iv in ivs:
        if q(iv.lo) and q(iv.hi):
            assert count_real_roots(q, iv.lo, iv.hi) == 1


def test_isolation_examples():
    ivs = isolate_real_roots(E3)
    assert len(ivs) == 2
    # zeros -2 - sqrt(3) and -2 + sqrt(3)
    lo_root = refine_root(E3, ivs[0], F(1, 10**6))
    hi_root = refine_root(E3, ivs[1], F(1, 10**6))
    assert abs(float(lo_root.value) - (-2 - 3**0.5)) < 1e-5
    assert abs(float(hi_root.value) - (-2 + 3**0.5)) < 1e-5
    e3 = modified_eulerian_poly(3).shift_down(1)
    ivs = isolate_real_roots(e3)
    assert len(ivs) == 2
    for iv, exact in zip(ivs, ((-3 - 3**0.5) / 6, (-3 + 3**0.5) / 6)):
        assert abs(float(refine_root(e3, iv, F(1, 10**8)).value) - exact) < 1e-7
    assert len(isolate_real_roots(Polynomial([F(-1, 3), 1]))) == 1


def test_isolation_exact_dyadic_zeros():
    p = Polynomial.from_roots([0, F(1, 2), F(-1, 4), 1, 3])
    ests = real_roots(p)
    expected = [F(-1, 4), 0, F(1, 2), 1, 3]
    assert len(ests) == len(expected)
    for est, r in zip(ests, expected):
        assert est.lo <= r <= est.hi


def test_isolation_rejects_repeated_factor():
    with pytest.raises(NotSquareFreeError):
        isolate_real_roots(Polynomial.from_roots([1, 1, 2]))


def test_isolate_nearest_orders_outward():
    p = Polynomial.from_roots([0, -1, -2, -3, 5, 7])
    neg = isolate_nearest(p, "negative", 2)
    assert [round(float((iv.lo + iv.hi) / 2)) for iv in neg] == [-1, -2]
    pos = isolate_nearest(p, "positive", 5)
    assert len(pos) == 2
    assert pos[0].contains(5) and pos[1].contains(7)


def test_refine_root_examples():
    iv = isolate_real_roots(Polynomial([F(-1, 3), 1]))[0]
    est = refine_root(Polynomial([F(-1, 3), 1]), iv, F(1, 10**12))
    assert est.lo <= F(1, 3) <= est.hi
    assert est.half_width <= abs(est.value) / 10**12


def test_refine_root_stays_inside_and_keeps_sign_change():
    b = bell_poly(12)
    for iv in isolate_real_roots(b):
        est = refine_root(b, iv, F(1, 10**15))
        assert iv.lo <= est.lo and est.hi <= iv.hi
        if est.half_width:
            assert b(est.lo) * b(est.hi) < 0


def test_refine_root_rejects_bad_interval():
    with pytest.raises(InvalidIntervalError):
        IsolatingInterval(F(0), F(1), 1, 1)
    with pytest.raises(InvalidIntervalError):
        refine_root(E3, IsolatingInterval(F(0), F(1), -1, 1), F(1, 100))


def test_bell_100_nearest_zero():
    b = bell_poly(100)
    iv = isolate_nearest(b, "negative", 1)[0]
    est = refine_root(b, iv, F(1, 10**12))
    assert est.lo < F(-1577721810, 10**39) + F(5, 10**40)
    assert est.hi > F(-1577721810, 10**39) - F(5, 10**40)


# interlacing


def _zeros_desc(p):
    # the shared zero at the origin is left out
    q = p.shift_down(p.trailing_zeros())
    return sorted(real_roots(q, F(1, 10**20)), key=lambda r: r.value, reverse=True)


def test_interlacing_examples():
    assert interlaces(_zeros_desc(bell_poly(5)), _zeros_desc(bell_poly(4)))
    assert interlaces(_zeros_desc(eulerian_poly(6)), _zeros_desc(eulerian_poly(5)))
    z = [RootEstimate(F(-1), F(0))]
    assert not interlaces(z, z)


def test_interlacing_needs_disjoint_intervals():
    a = [RootEstimate(F(-1), F(1, 10)), RootEstimate(F(-3), F(1, 10))]
    b = [RootEstimate(F(-2), F(2))]
    with pytest.raises(InsufficientRefinementError):
        interlaces(a, b)


def test_interlacing_rejects_unsorted():
    a = [RootEstimate(F(-3), F(0)), RootEstimate(F(-1), F(0))]
    with pytest.raises(ValueError):
        interlaces(a, [RootEstimate(F(-2), F(0))])
