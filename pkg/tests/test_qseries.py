from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcong.errors import InvalidParameter, NotInvertible, PrecisionExhausted
from qcong.qseries import QSeries
from qcong.specialforms import eisenstein, eta, euler, partitions

PREC = 12
fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@st.composite
def series(draw, unit=False, prec=PREC):
    coeffs = draw(st.lists(fractions, min_size=prec, max_size=prec))
    if unit and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    return QSeries(coeffs, prec)


def naive_mul(a, b, prec):
    return [sum(a.coeff(i) * b.coeff(n - i) for i in range(n + 1)) for n in range(prec)]


def test_mul_examples():
    assert QSeries([1, 1], 10) * QSeries([1, -1], 10) == QSeries([1, 0, -1], 10)
    q1 = QSeries([1], 5, offset24=1) * QSeries([1], 5, offset24=23)
    assert q1.offset24 == 24 and q1 == QSeries([0, 1], 6)
    assert partitions(50) * euler(50) == QSeries([1], 50)


def test_invert_examples():
    assert QSeries([1, -1], 10).invert() == QSeries([1] * 10, 10)
    assert euler(10).invert().coeff(4) == 5
    with pytest.raises(NotInvertible):
        QSeries([0, 0], 2).invert()


def test_pow_examples():
    assert QSeries([1, 1], 10) ** 2 == QSeries([1, 2, 1], 10)
    assert QSeries([1, 1], 10) ** 0 == QSeries([1], 10)
    assert QSeries([1, -1], 10) ** -2 == QSeries(range(1, 11), 10)


def test_dilate_examples():
    assert QSeries([1, 1], 10).dilate(5) == QSeries([1, 0, 0, 0, 0, 1], 50)
    a = QSeries([3, 1, 4], 10)
    assert a.dilate(1) == a
    assert eta(10).dilate(24).offset24 == 24
    with pytest.raises(InvalidParameter):
        a.dilate(0)


def test_theta_examples():
    assert QSeries([1, 0, 3], 10).theta() == QSeries([0, 0, 6], 10)
    assert QSeries([7], 10).theta() == QSeries([], 10)
    prec = 60
    e2 = eisenstein(2, prec)
    assert e2.theta() == (e2 * e2 - eisenstein(4, prec)) / 12


def test_atkin_examples():
    s = QSeries.from_dict({-1: 1, 2: 5, 4: 7}, 10)
    assert s.atkin_U(2) == QSeries([0, 5, 7], 5)
    a = QSeries([1, 2, 3], 10)
    assert a.atkin_U(1) == a


def test_coeff_examples():
    a = QSeries([1, 1], 10)
    assert a.coeff(1) == 1 and a.coeff(5) == 0
    with pytest.raises(PrecisionExhausted):
        a.coeff(50)


def test_precision_is_minimum():
    assert (QSeries([1, 1], 5) * QSeries([1], 9)).prec == 5
    assert (QSeries([1, 1], 5) + QSeries([1], 9)).prec == 5


def test_zero_series_any_precision():
    z = QSeries([], 7)
    assert z.valuation() is None and z.prec == 7


@given(series(), series())
def test_mul_commutes_and_matches_convolution(a, b):
    c = a * b
    assert c == b * a
    assert [c.coeff(n) for n in range(PREC)] == naive_mul(a, b, PREC)


@given(series(), series(), series())
@settings(max_examples=50)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@given(series(unit=True))
def test_invert_is_involution(a):
    inv = a.invert()
    assert inv.invert() == a
    assert a * inv == QSeries([1], PREC)


@given(series(unit=True), st.integers(-3, 4))
@settings(max_examples=50)
def test_pow_matches_repeated_mul(a, k):
    want = QSeries([1], PREC)
    base = a if k >= 0 else a.invert()
    for _ in range(abs(k)):
        want = want * base
    assert a ** k == want


@given(series(), st.integers(1, 6))
def test_dilate_then_U_is_identity(a, d):
    assert a.dilate(d).atkin_U(d) == a


@given(series(), series())
def test_theta_is_derivation(a, b):
    assert (a * b).theta() == a.theta() * b + a * b.theta()


@given(series())
def test_json_roundtrip(a):
    assert QSeries.from_json(a.to_json()) == a
