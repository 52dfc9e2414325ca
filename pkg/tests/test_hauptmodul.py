from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcong import tables
from qcong.errors import FitFailed, InvalidParameter, NotPolynomialInY, PrecisionExhausted
from qcong.hauptmodul import (LaurentPoly, Y, Z, derive_modular_equation, expand_in_Y, fit_rational_in_Y,
                              minimal_rational_fit, modeq_index_set)
from qcong.numtheory import valuation
from qcong.qseries import QSeries
from qcong.specialforms import eisenstein, level_eisenstein
from qcong.towers import m_table, tilde_E

PREC = 80


def test_expand_round_trip_example():
    pref = tilde_E(4, 5, PREC)
    y = Y(5, PREC)
    s = pref * (QSeries([1], PREC) + y * y * 3)
    assert expand_in_Y(s, pref, y) == LaurentPoly({0: 1, 2: 3})


def test_expand_group_rows():
    # (E1 Z7^-5)|U7 = 49 E1 and Z7^-4|U7 = -4/Y7 - 7
    assert m_table("L47", -5, 40) == LaurentPoly({0: 49})
    assert m_table("L67", -4, 40) == LaurentPoly({-1: -4, 0: -7})


def test_expand_direct_group_one():
    n = 7 * 60
    e1 = level_eisenstein("E1", 7, n)
    s = (e1 * Z(7, n + 20) ** -5).atkin_U(7)
    assert expand_in_Y(s, level_eisenstein("E1", 7, s.prec), Y(7, s.prec + 2)) == LaurentPoly({0: 49})


def test_expand_rejects_and_bounds():
    y = Y(5, 20)
    with pytest.raises(NotPolynomialInY):
        expand_in_Y(y ** -2, None, y, jmin=0)
    with pytest.raises(PrecisionExhausted):
        expand_in_Y(eisenstein(4, 20), None, y)


laurent = st.dictionaries(st.integers(-3, 6), st.integers(-1000, 1000).filter(bool), max_size=6)


@given(laurent, st.sampled_from([5, 7, 13]))
@settings(max_examples=40, deadline=None)
def test_expand_round_trip(coeffs, l):
    poly = LaurentPoly(coeffs)
    y = Y(l, PREC)
    pref = tilde_E(4, l, PREC)
    s = pref * poly.evaluate(y, PREC)
    assert expand_in_Y(s, pref, y) == poly


def test_fit_examples():
    prec = 200
    A = eisenstein(4, prec // 5 + 2).dilate(5).truncate(prec)
    P, Q = fit_rational_in_Y(A, eisenstein(4, prec), Y(5, prec), 2, 2)
    assert P == [1, 10, 5] and Q == [1, 250, 3125]
    A7 = eisenstein(6, prec // 7 + 2).dilate(7).truncate(prec)
    P, Q = fit_rational_in_Y(A7, eisenstein(6, prec), Y(7, prec), 4, 4)
    assert P == [1, 14, 63, 70, -7]


def test_fit_identity_is_trivial():
    e = eisenstein(6, 100)
    assert minimal_rational_fit(e, e, Y(5, 100), 4) == (0, [Fraction(1)], [Fraction(1)])


def test_fit_fails_when_degree_too_small():
    prec = 200
    A = eisenstein(4, prec // 5 + 2).dilate(5).truncate(prec)
    with pytest.raises(FitFailed):
        fit_rational_in_Y(A, eisenstein(4, prec), Y(5, prec), 1, 1)


def test_modeq_examples():
    assert [derive_modular_equation(5).psi[(r, 1)] for r in range(1, 6)] == [25, 25, 15, 5, 1]
    eq7 = derive_modular_equation(7)
    # psi(r, s) multiplies Y(7 tau)^s Z^(7-r): the 7 Z^4 Y(7 tau) term is psi(3, 1)
    assert eq7.psi[(1, 2)] == 343 and eq7.psi[(3, 1)] == 7
    assert eq7.psi == tables.MODEQ_PSI[7]


def test_modeq_13_bound_and_verification():
    eq = derive_modular_equation(13)
    assert set(eq.psi) <= set(modeq_index_set(13))
    for (r, s), c in eq.psi.items():
        assert valuation(c, 13) >= (13 * s - 7 * r + 13) // 14
    assert eq.verify(700)


def test_modeq_bad_level():
    with pytest.raises(InvalidParameter):
        modeq_index_set(11)
