from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from qcong.errors import FitFailed, InvalidParameter, PrecisionExhausted
from qcong.hauptmodul import fit_linear
from qcong.moments import (FORMULAS, PUBLISHED_VARIANTS, Formula, SequenceStore, basis_A, check_T_belongs,
                           formula, moment_basis, moment_formula_eval, moment_series, parse_terms,
                           quasimodular_dim, rediscover_formula, same_terms, spt_sequence, symmetrized_series)
from qcong.specialforms import partitions

STORE = SequenceStore()


def test_moment_series_examples():
    assert moment_series("crank", 2, 5).coeff(2) == 8
    assert moment_series("rank", 2, 5).coeff(1) == 0
    assert moment_series("crank", 4, 5).coeff(1) == 2
    with pytest.raises(InvalidParameter):
        moment_series("spin", 2, 5)


def test_dyson_crank_second_moment():
    M2 = moment_series("crank", 2, 60)
    P = partitions(60)
    assert all(M2.coeff(n) == 2 * n * P.coeff(n) for n in range(2, 60))


def test_symmetrized_examples():
    STORE.ensure("N2", 100)
    STORE.ensure("eta2", 100)
    assert all(STORE.get("eta2", n) == STORE.get("N2", n) / 2 for n in range(100))
    assert symmetrized_series("crank", 2, 5).coeff(2) == 4
    STORE.ensure("N4", 100)
    STORE.ensure("eta4", 100)
    assert all(STORE.get("eta4", n) == (STORE.get("N4", n) - STORE.get("N2", n)) / 24 for n in range(100))


def test_spt_examples():
    assert spt_sequence(1, 5)[1:] == [1, 3, 5, 10]
    assert spt_sequence(2, 3)[1] == 0
    spt = spt_sequence(1, 5 * 40 + 5)
    assert all(spt[5 * n + 4] % 5 == 0 for n in range(40))


def test_spt_is_mu_minus_eta():
    for k in (1, 2, 3):
        STORE.ensure(f"mu{2 * k}", 80)
        STORE.ensure(f"eta{2 * k}", 80)
        want = [STORE.get(f"mu{2 * k}", n) - STORE.get(f"eta{2 * k}", n) for n in range(80)]
        assert spt_sequence(k, 80) == want


def test_formula_examples():
    assert moment_formula_eval("M4", 1) == 2
    assert moment_formula_eval("N4", 1) == 0
    for n in range(1, 40):
        assert moment_formula_eval("M2-repn", n, STORE) == 2 * n * STORE.get("p", n)


def test_short_published_N4_fails():
    f = Formula("N4-short", "N4", parse_terms(PUBLISHED_VARIANTS["N4-short"][1]))
    STORE.ensure("N4", 20)
    for s in f.sequences():
        STORE.ensure(s, 20)
    assert any(f.evaluate(STORE, n) != STORE.get("N4", n) for n in range(20))


def test_parse_terms():
    terms = parse_terms("1/20 e4; -12 n^2 p; 1 n N2")
    assert [(t.coeff, t.npow, t.seq) for t in terms] == [(Fraction(1, 20), 0, "e4"), (-12, 2, "p"), (1, 1, "N2")]


def test_store_bounds():
    s = SequenceStore()
    s.ensure("p", 10)
    assert s.get("p", -3) == 0
    with pytest.raises(PrecisionExhausted):
        s.get("p", 10)


def test_quasimodular_dims():
    assert [quasimodular_dim(n) for n in range(1, 11)] == [2, 4, 7, 11, 16, 23, 31, 41, 53, 67]
    assert len(moment_basis("crank", 6, 10)) == 23


@pytest.mark.parametrize("kind,two_n", [(k, t) for k in ("crank", "rank") for t in (4, 6, 8, 10, 12, 14)])
def test_rediscovered_formulas_match_catalog(kind, two_n):
    name = ("M" if kind == "crank" else "N") + str(two_n)
    assert same_terms(rediscover_formula(kind, two_n), formula(name))


def test_C4_solve_rejects_too_small_basis():
    prec = 60
    with pytest.raises(FitFailed):
        fit_linear(moment_series("crank", 6, prec), [b for _, b in basis_A(2, prec)])


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_T_belongs(k):
    assert check_T_belongs(k)


def _partitions_of(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    return [(p,) + rest for p in range(min(n, largest), 0, -1) for rest in _partitions_of(n - p, p)]


def _binom(x, j):
    """x choose j for any integer x."""
    num = 1
    for i in range(j):
        num *= x - i
    return Fraction(num, factorial(j))


def _crank(lam):
    ones = lam.count(1)
    return lam[0] if ones == 0 else sum(1 for x in lam if x > ones) - ones


@given(st.integers(1, 3), st.integers(2, 18))
@settings(max_examples=30, deadline=None)
def test_symmetrized_moments_are_binomial_sums(k, n):
    parts = _partitions_of(n)
    eta = sum(_binom(lam[0] - len(lam) + k - 1, 2 * k) for lam in parts)
    mu = sum(_binom(_crank(lam) + k - 1, 2 * k) for lam in parts)
    assert symmetrized_series("rank", 2 * k, 20).coeff(n) == eta
    assert symmetrized_series("crank", 2 * k, 20).coeff(n) == mu
