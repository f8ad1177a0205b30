from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

from bellzeros.asymptotics import (
    BracketEndpointZeroError,
    bracket_holds,
    bracket_interval,
    bracket_sign_check,
    default_eps,
    discover_n0,
    family_polynomial,
    find_cutoff_N,
    is_unimodal_with_plateau,
    plateau_value,
    predict,
    ratio_series,
    rho,
    rho_r,
    rho_r_plateau,
    rightmost_negative_zeros,
)
from bellzeros.combos import EXAMPLE
from bellzeros.exact import Polynomial, count_real_roots
from bellzeros.families import Bell, Eulerian, ModifiedEulerian, MultiplierTransformed, RBell
from bellzeros.multipliers import GaussFactorial, InverseFactorialPower
from bellzeros.report import format_decimal

F = Fraction


def test_rho_examples():
    assert rho(1, 0) == rho(1, 1) == 1
    assert rho(2, 2) == F(4, 3)
    assert rho(1, 2) == F(3, 4)
    with pytest.raises(ValueError):
        rho(1, -1)


def test_rho_non_integer_argument():
    v = rho(1, F(1, 2))
    assert isinstance(v, Decimal)
    with localcontext() as ctx:
        ctx.prec = 60
        # (3/2) 2^(-1/2)
        assert abs(v - Decimal(3) / Decimal(2).sqrt() / 2) < Decimal("1e-50")


def test_rho_r_examples():
    assert rho_r_plateau(1, 1) == 1
    assert rho_r(1, F(5, 4), 1) == F(5, 4)
    for m in range(1, 6):
        for r in (F(1), F(5, 4), F(3)):
            assert rho_r(m, r, m - 1) == rho_r(m, r, m) == rho_r_plateau(m, r)
    for m in range(1, 6):
        for x in range(20):
            # r = 1 shifts B_{n+1}/x, so rho is recovered exactly
            assert rho_r(m, 1, x) == rho(m, x)
    tiny = F(1, 10**9)
    for m in range(1, 5):
        for x in range(8):
            # continuity at r = 0
            assert abs(rho_r(m, tiny, x) - x * F(m - 1, m) ** x) < F(1, 10**6)
    with pytest.raises(ValueError):
        rho_r(1, 0, 1)


def test_plateau_values():
    assert plateau_value(1) == 1
    assert plateau_value(2) == F(4, 3)
    assert plateau_value(3) == F(27, 16)
    for m in range(1, 11):
        assert rho(m, m - 1) == rho(m, m) == plateau_value(m)


def test_cutoff():
    assert find_cutoff_N(1) == 2
    assert find_cutoff_N(2) == 4
    for m in range(1, 8):
        N = find_cutoff_N(m)
        assert N >= m + 1 and rho(m, N) < 1


def test_unimodality():
    for m in range(1, 11):
        assert is_unimodal_with_plateau([rho(m, j) for j in range(101)], m)


def test_predict_examples():
    assert predict(Bell(), 1, 100).value == -F(1, 2**99)
    assert format_decimal(predict(Bell(), 1, 100).value) == "-1.577721810e-30"
    s1 = predict(MultiplierTransformed(InverseFactorialPower(2)), 1, 100)
    assert s1.value == -4 * F(1, 2**100)
    assert format_decimal(s1.value) == "-3.155443621e-30"
    a2 = predict(MultiplierTransformed(GaussFactorial(2)), 1, 100)
    assert a2.value == -8 * F(1, 2**99)
    assert format_decimal(a2.value) == "-1.262177448e-29"
    r = predict(RBell(F(5, 4)), 2, 100)
    assert r.value == -2 * F(9, 13) ** 100


def test_predict_consistency():
    for m in range(1, 6):
        for n in range(m + 1, 40):
            assert predict(Bell(), m, n).value == predict(MultiplierTransformed(InverseFactorialPower(1)), m, n).value
            assert predict(Eulerian(), m, n).value == predict(ModifiedEulerian(), m, n).value


def test_predict_range_errors():
    with pytest.raises(ValueError):
        predict(Bell(), 3, 3)
    assert predict(RBell(1), 3, 3).value < 0
    with pytest.raises(ValueError):
        predict(Bell(), 0, 10)
    with pytest.raises(TypeError):
        predict(EXAMPLE, 1, 10)


def test_bracket_examples():
    a = bracket_interval(Bell(), 1, 10, F(1, 10))
    b = bracket_interval(Bell(), 1, 11, F(1, 10))
    assert a.hi < b.lo
    inner = bracket_interval(Bell(), 1, 10, F(1, 20))
    outer = bracket_interval(Bell(), 2, 10, F(1, 20))
    assert outer.hi < inner.lo
    c = bracket_interval(Bell(), 1, 100, F(1, 10))
    assert (c.lo, c.hi) == (-F(11, 10) * F(1, 2**99), -F(9, 10) * F(1, 2**99))
    with pytest.raises(ValueError):
        bracket_interval(Bell(), 1, 10, F(1, 8))
    with pytest.raises(ValueError):
        bracket_interval(Bell(), 1, 10, 0)


def test_bracket_orderings_hold_in_eps_range():
    for m in range(1, 5):
        eps = F(1, 2 * (m + 2) ** 2) - F(1, 10**6)
        for n in range(m + 1, 40):
            here = bracket_interval(Bell(), m, n, eps)
            assert here.hi < bracket_interval(Bell(), m, n + 1, eps).lo
            assert bracket_interval(Bell(), m + 1, n + 1, eps).hi < bracket_interval(Bell(), m, n + 1, eps).lo


def test_bracket_sign_check_examples():
    assert bracket_sign_check(Bell(), 1, 30, F(1, 10))
    assert bracket_sign_check(Bell(), 3, 60, F(1, 50))
    assert not bracket_sign_check(Bell(), 3, 5, F(1, 50))


def test_bracket_sign_check_reports_exact_zero(monkeypatch):
    import bellzeros.asymptotics as asy

    eps = F(1, 10)
    b = bracket_interval(Bell(), 1, 20, eps)
    # a polynomial vanishing exactly at the upper endpoint
    fake = Polynomial([-b.hi, 1]) * Polynomial([0, 1])
    monkeypatch.setattr(asy, "family_polynomial", lambda family, n: fake)
    with pytest.raises(BracketEndpointZeroError):
        bracket_sign_check(Bell(), 1, 20, eps)
    assert not bracket_holds(Bell(), 1, 20, eps)


def test_ratio_series_examples():
    (row,) = ratio_series(Bell(), 1, [100])
    assert row.to_dict()["ratio"] == "1.000000000"
    assert row.to_dict()["zero"] == "-1.577721810e-30"
    (row,) = ratio_series(Bell(), 5, [100])
    d = row.to_dict()
    assert (d["zero"], d["prediction"]) == ("-7.547543310e-8", "-7.244804083e-8")
    assert abs(float(row.ratio) - 1.0418) < 1e-4
    (row,) = ratio_series(RBell(F(5, 4)), 2, [100])
    d = row.to_dict()
    assert (d["zero"], d["prediction"]) == ("-2.142691182e-16", "-2.142622735e-16")


def test_ratio_series_small_n_falls_back():
    rows = ratio_series(Bell(), 3, [4, 5, 6, 30], threads=2)
    assert [r.n for r in rows] == [4, 5, 6, 30]
    assert not rows[1].used_bracket
    for r in rows:
        f = family_polynomial(Bell(), r.n).shift_down(1)
        # exactly m - 1 zeros lie between the refined zero and the origin
        assert count_real_roots(f, r.zero.hi, 0) == 2


def test_eulerian_zero_map():
    tol = F(1, 10**20)
    for n in range(3, 41):
        for m in (1, 2):
            if m > n - 1:
                continue
            s = rightmost_negative_zeros(Eulerian(), n, m, tol)[m - 1]
            s_hat = rightmost_negative_zeros(ModifiedEulerian(), n, m, tol)[m - 1]
            mapped = s.value / (1 - s.value)
            assert abs(s_hat.value - mapped) <= 2 * tol * abs(s_hat.value)


def test_bracket_holds_beyond_discovered_n0():
    for family in (Bell(), RBell(F(5, 4))):
        for m in (1, 2):
            n0 = discover_n0(family, m, 45)
            assert n0 is not None
            for n in range(n0, 46):
                b = bracket_interval(family, m, n, default_eps(m))
                f = family_polynomial(family, n).shift_down(family_polynomial(family, n).trailing_zeros())
                assert count_real_roots(f, b.lo, b.hi) == 1
                assert count_real_roots(f, b.hi, 0) == m - 1
                assert bracket_sign_check(family, m, n, default_eps(m))
            if n0 > m + 1:
                assert not bracket_holds(family, m, n0 - 1)
