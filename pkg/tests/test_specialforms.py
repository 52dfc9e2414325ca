from fractions import Fraction

import pytest

from qcong.errors import InvalidParameter
from qcong.hauptmodul import Y, Z, hauptmodul
from qcong.qseries import QSeries
from qcong.specialforms import (delta, e_sequence, eisenstein, eta, eta_quotient, euler, level_eisenstein,
                                partition_power, partitions, tilde_E)


def test_eisenstein_examples():
    assert eisenstein(0, 10) == QSeries([1], 10)
    assert eisenstein(4, 5).coeff(1) == 240
    assert eisenstein(2, 5).coeff(1) == -24
    with pytest.raises(InvalidParameter):
        eisenstein(3, 5)


def test_eisenstein_weight_12_relation():
    # 691 (E12 - E6^2) is a multiple of Delta
    prec = 40
    diff = (eisenstein(12, prec) - eisenstein(6, prec) ** 2) * 691
    assert diff == delta(prec) * diff.coeff(1)


def test_eta_24_is_delta():
    d = eta_quotient({1: 24}, 20)
    assert d.offset24 == 24
    assert d.normalized().coeff(1) == 1
    assert [d.normalized().coeff(n) for n in range(1, 6)] == [1, -24, 252, -1472, 4830]


def test_eta_cubed_jacobi():
    prec = 60
    e3 = eta_quotient({1: 3}, prec)
    assert e3.offset24 == 3
    want = {i * (i + 1) // 2: (-1) ** i * (2 * i + 1) for i in range(12)}
    assert all(e3.coeff(n) == want.get(n, 0) for n in range(prec))


def test_eta_quotient_z5_offset():
    z = eta_quotient({25: 1, 1: -1}, 10)
    assert z.offset24 == 24
    assert Z(5, 10).valuation() == 1
    assert Z(13, 10).valuation() == 7


def test_partition_powers():
    assert partitions(10).coeff(4) == 5
    assert partition_power(1, 5).coeff(1) == -1
    assert partition_power(23, 3).coeff(0) == 1
    assert partition_power(-1, 20) == partitions(20)
    assert partition_power(3, 20) == euler(20) ** 3


def test_e_sequence_examples():
    e4 = e_sequence(4, 5)
    assert e4[0] == 1 and e4[1] == 241 and e4[4] == 29285
    assert e4[4] == 5 * 5857
    assert e_sequence(0, 10) == [partitions(10).coeff(n) for n in range(10)]


def test_e_sequence_convolution_oracle():
    E4 = [1] + [240 * sum(d ** 3 for d in range(1, n + 1) if n % d == 0) for n in range(1, 30)]
    p = [partitions(30).coeff(n) for n in range(30)]
    want = [sum(E4[k] * p[n - k] for k in range(n + 1)) for n in range(30)]
    assert e_sequence(4, 30) == want


def test_hauptmodul_y5():
    y = hauptmodul("Y", 5, 10)
    assert [y.coeff(n) for n in range(4)] == [0, 1, 6, 27]
    assert hauptmodul("Z", 5, 10) == Z(5, 10)
    with pytest.raises(InvalidParameter):
        hauptmodul("Y", 11, 10)


def test_level_eisenstein():
    e25 = level_eisenstein("E2", 5, 20)
    assert e25.coeff(0) == 1
    e1 = level_eisenstein("E1", 7, 20)
    assert e1.coeff(1) == 2
    # q^7: divisors 1 and 7 give 2*(1/7) + 2*(7/7) = 2 + 0
    assert e1.coeff(7) == 2
    with pytest.raises(InvalidParameter):
        level_eisenstein("E1", 5, 10)


def test_tilde_E():
    prec = 40
    t = tilde_E(4, 5, prec)
    assert t.coeff(0) == 1
    assert t == eta_quotient({1: 10, 5: -2}, prec).normalized()
    assert tilde_E(0, 7, 10) == QSeries([1], 10)
    y = Y(13, prec)
    den = QSeries([1], prec) + y * 247 + y ** 2 * 3380 + y ** 3 * 15379 + y ** 4 * 28561
    assert tilde_E(4, 13, prec) * den == eisenstein(4, prec)


@pytest.mark.parametrize("weight,l", [(4, 5), (6, 5), (4, 7), (6, 7)])
def test_tilde_E_closed_forms(weight, l):
    prec = 60
    assert tilde_E(weight, l, prec) == tilde_E(weight, l, prec, form="closed")


def test_eta_dilation():
    assert eta(10, 5).offset24 == 5
    assert eta(50, 5) == eta(10).dilate(5)
