import pytest

from qcong import tables
from qcong.errors import InvalidParameter
from qcong.numtheory import delta, valuation
from qcong.qseries import QSeries
from qcong.specialforms import e_sequence, eisenstein, euler, partitions
from qcong.towers import (FAMILIES, L_series, L_series_from_e, a_rows, a_table, check_representation,
                          check_valuation_bounds, derive_a1, extract_progression, family, m_table)
from qcong.hauptmodul import LaurentPoly


def test_L_examples():
    assert L_series(4, 5, 1, 5).coeff(1) == 29285
    assert L_series(6, 7, 0, 30) == eisenstein(6, 30)
    with pytest.raises(InvalidParameter):
        L_series(4, 5, -1, 10)


def test_r0_tower_is_partition_progression():
    prec = 30
    L = L_series(0, 5, 1, prec)
    p = partitions(5 * prec + 5)
    seq = QSeries([0] + [p.coeff(5 * n + 4) for n in range(prec - 1)], prec)
    assert L == seq * euler(prec).dilate(5).truncate(prec)


@pytest.mark.parametrize("weight,l,k", [(4, 5, 1), (4, 5, 2), (6, 7, 1), (4, 13, 1), (6, 5, 3)])
def test_L_matches_e_progression(weight, l, k):
    prec = 25
    assert L_series(weight, l, k, prec) == L_series_from_e(weight, l, k, prec)


def test_extract_progression_examples():
    assert extract_progression(4, 5, 1, 1) == [29285]
    assert extract_progression(0, 5, 1, 3) == [5, 30, 135]
    assert all(x % 25 == 0 for x in extract_progression(4, 5, 2, 20))


def test_extract_progression_against_sequence():
    e6 = e_sequence(6, 49 * 12 + 50)
    d = delta(7, 2)
    assert extract_progression(6, 7, 2, 12) == [e6[49 * n + d] for n in range(12)]


def test_m_table_examples():
    assert m_table("L45", 1) == LaurentPoly({1: 5})
    assert m_table("L67", -5) == LaurentPoly({-1: 10, 0: 49})
    assert m_table("L413", 2) == LaurentPoly({4: -169})


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_m_recurrence_matches_direct(name):
    fam = family(name)
    lo, hi = min(fam.seeds), max(fam.seeds)
    for i in (lo - 2, lo - 1, hi + 1, hi + 2):
        assert m_table(fam, i) == m_table(fam, i, prec=80), i


def test_a_table_examples():
    assert a_table("L45", 1) == LaurentPoly({0: 29285, 1: 1171250, 2: 5 ** 10})
    row2 = a_table("L45", 2)
    assert all(valuation(c, 5) >= 2 + (5 * j + 1) // 2 for j, c in row2.coeffs.items())


@pytest.mark.xfail(strict=True, reason="printed row ends at a(1,10) = 13^13; the expansion has 20*13^12 Y^10 + 13^13 Y^11")
def test_a_table_L413_printed_top_entry():
    assert a_table("L413", 1).as_ints().get(10) == 13 ** 13


def test_a_table_L413_derived_top_entries():
    row = derive_a1(FAMILIES["L413"])
    assert row[10] == 20 * 13 ** 12 and row[11] == 13 ** 13
    assert row == a_table("L413", 1).as_ints()
    assert tables.A1["L413"][10] == 13 ** 13


def test_a_table_jmax():
    row = a_table("L45", 3, jmax=4)
    assert max(row.coeffs) <= 4
    assert a_rows(FAMILIES["L45"], 3)[3] == {**a_table("L45", 3).as_ints()}


@pytest.mark.parametrize("name,k,prec", [("L45", 1, 300), ("L45", 3, 160), ("L67", 1, 300)])
def test_representation_examples(name, k, prec):
    res = check_representation(FAMILIES[name], k, prec)
    assert res["status"] == "pass"


def test_e6_mod7_from_L67():
    # L_{6,7,1} is divisible by 7, hence e6(7n+5) = 0 mod 7
    L = L_series(6, 7, 1, 200)
    assert all(c.numerator % 7 == 0 for _, c in L.items())
    row = a_table("L67", 1).as_ints()
    assert all(c % 7 == 0 for c in row.values())


def test_valuation_examples():
    assert valuation(a_table("L45", 1)[2], 5) == 10 >= 1 + 10 // 2
    assert valuation(m_table("L67", -5)[0], 7) == 2 >= (0 + 10 - 1) // 4


def test_valuation_grid_L413():
    assert check_valuation_bounds(FAMILIES["L413"], 8, 40)["status"] == "pass"


def test_unknown_family():
    with pytest.raises(InvalidParameter):
        family("L411")
