from fractions import Fraction

import pytest
import sympy
from conftest import small_fractions
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mf7cert.exactalg import QQ, NotAUnitError
from mf7cert.qseries import (
    PrecisionError,
    QSeries,
    VLaurent,
    divisor_series,
    eta_product_delta,
    geometric,
    sigma,
)


@st.composite
def series(draw, low_min=-2, low_max=3, max_len=8):
    low = draw(st.integers(low_min, low_max))
    coeffs = draw(st.lists(small_fractions, min_size=1, max_size=max_len))
    prec = low + len(coeffs) + draw(st.integers(0, 2))
    return QSeries(QQ, coeffs, low, prec)


def test_geometric_series_is_inverse_of_one_minus_q():
    s = QSeries(QQ, [1, -1], 0, 10).invert()
    assert s == geometric(10)
    assert str(s) == "1 + q + q^2 + q^3 + q^4 + q^5 + q^6 + q^7 + q^8 + q^9 + O(q^10)"


def test_compose_scale():
    q = QSeries.q(QQ, 5)
    s = q.compose_scale(7)
    assert s[7] == 1 and s.low == 7 and s.prec == 35


def test_inverting_a_non_unit():
    from mf7cert.exactalg import ZZ

    with pytest.raises(NotAUnitError):
        QSeries(ZZ, [2, 1], 0, 5).invert()


def test_precision_underflow():
    with pytest.raises(PrecisionError):
        divisor_series(3, 1, 0)


def test_product_precision_is_tracked():
    a = QSeries(QQ, [1, 1], 0, 5)
    b = QSeries(QQ, [1], 2, 4)
    assert (a * b).prec == 4
    assert (a + b).prec == 4


def test_lowest_exponent_carries_nonzero_coefficient():
    s = QSeries(QQ, [0, 0, 3, 0], 1, 6)
    assert s.low == 3 and s.leading_coefficient() == 3
    assert QSeries(QQ, [0, 0], 0, 4).is_zero()


@settings(max_examples=50, deadline=None)
@given(series(), series(), series())
def test_multiplication_is_associative_and_commutative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=50, deadline=None)
@given(series())
def test_inverse(a):
    assume(not a.is_zero())
    inv = a.invert()
    prod = a * inv
    assert prod.agrees_with(QSeries.one(QQ, prod.prec))


@given(st.integers(0, 5), st.integers(1, 300))
def test_sigma_matches_sympy(k, m):
    assert sigma(k, m) == sympy.divisor_sigma(m, k)


@given(st.integers(1, 6), st.integers(1, 40))
def test_divisor_series_is_scaled(n, prec):
    s = divisor_series(3, n, prec)
    base = divisor_series(3, 1, -(-prec // n))
    assert s.agrees_with(base.compose_scale(n).truncate(prec))


def test_delta_coefficients():
    # Ramanujan tau(1..6)
    d = eta_product_delta(1, 7)
    assert [int(d[i]) for i in range(1, 7)] == [1, -24, 252, -1472, 4830, -6048]


def test_delta_at_q7():
    d = eta_product_delta(7, 22)
    assert d.low == 7 and d[14] == -24 and d[21] == 252 and d[8] == 0


@settings(max_examples=30)
@given(series())
def test_json_round_trip(a):
    assert QSeries.from_json(a.to_json()).agrees_with(a)


def test_vlaurent_arithmetic():
    v = VLaurent.monomial(1)
    w = v + VLaurent.monomial(-1)
    assert w * w == VLaurent({2: 1, 0: 2, -2: 1})
    assert (v**3).inverse() == VLaurent.monomial(-3)
    assert w.at_one() == Fraction(2)
    with pytest.raises(ArithmeticError):
        (v - VLaurent.monomial(-1)).inverse()


def test_pow_matches_repeated_product():
    s = QSeries(QQ, [1, 2, -1], 0, 9)
    assert s**5 == s * s * s * s * s
    assert s**0 == QSeries.one(QQ, 9)
