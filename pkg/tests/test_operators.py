import pytest
from hypothesis import given, settings, strategies as st

from qcong.errors import InvalidParameter, PrecisionExhausted
from qcong.numtheory import chi12, kronecker
from qcong.operators import CTable, HeckeContext, b_series, build_f, hecke_T, verify_hecke_structure
from qcong.qseries import QSeries
from qcong.specialforms import e_sequence


def test_build_f_examples():
    f = build_f(4, 500)
    assert f.valuation() == -1
    assert f.at(-1) == 1
    assert f.at(23) == 241
    assert all(f.at(e) == 0 for e in range(-1, 400) if e % 24 != 23)
    e4 = e_sequence(4, 16)
    assert [f.at(24 * n - 1) for n in range(16)] == e4


def test_build_f_rejects_weight():
    with pytest.raises(InvalidParameter):
        build_f(12, 100)


def test_context():
    ctx = HeckeContext.for_r(2, 5)
    assert ctx.lam == 3 and ctx.r == 2 and ctx.chi_l == -1
    assert ctx.top == 5 ** 5
    with pytest.raises(InvalidParameter):
        HeckeContext(3, 3)
    with pytest.raises(InvalidParameter):
        HeckeContext(0, 5)


def _low(S, below=23):
    s = S.exponent_shift()
    return {n + s: c for n, c in S.items() if n + s < below}


def test_T2_leading_terms():
    ctx = HeckeContext.for_r(2, 5)
    F = hecke_T(build_f(4, 24 * 625 * 2), ctx, 1)
    assert _low(F) == {-25: 3125, -1: -25}


def test_T4_leading_terms():
    ctx = HeckeContext.for_r(2, 5)
    l, lam, chi = 5, 3, -1
    F = hecke_T(build_f(4, 24 * 5 ** 4 + 24), ctx, 2)
    assert _low(F) == {-l ** 4: l ** (4 * lam - 2), -l ** 2: l ** (3 * lam - 2) * chi, -1: l ** (2 * lam - 2)}


def test_T_of_zero():
    ctx = HeckeContext.for_r(2, 7)
    z = QSeries([], 24 * 49 * 2)
    assert hecke_T(z, ctx, 1).valuation() is None


def test_T_needs_precision():
    with pytest.raises(PrecisionExhausted):
        hecke_T(build_f(4, 100), HeckeContext.for_r(2, 5), 1)


def test_b_series_leading():
    ctx = HeckeContext.for_r(3, 7)
    l, lam = 7, 5
    f = build_f(6, 24 * 7 ** 4 + 24)
    assert b_series(f, ctx, 0) == f.normalized()
    assert _low(b_series(f, ctx, 1)) == {-l ** 2: l ** (2 * lam - 1)}
    assert _low(b_series(f, ctx, 2)) == {-l ** 4: l ** (4 * lam - 2)}


@given(st.integers(-2000, 2000).filter(bool), st.sampled_from([5, 7, 11, 13]), st.sampled_from([3, 5, 7]))
@settings(max_examples=60)
def test_c_leading_values(n, l, lam):
    ctx = HeckeContext(lam, l)
    c = CTable(ctx)
    assert c(1, 1, n) == 1
    assert c(1, 0, n) == kronecker((-1) ** lam * n, l) * chi12(l) * l ** (lam - 1)
    assert c(2, -2, n) == l ** (2 * (2 * lam - 1))


@pytest.mark.parametrize("r,l", [(2, 5), (3, 7), (4, 5)])
def test_structure_report(r, l):
    rep = verify_hecke_structure(HeckeContext.for_r(r, l), 1, 20)
    assert rep.status == "pass"
    checks = rep.details["checks"]
    assert checks["prop-b-2"] > 0 and checks["prop-b-3"] > 0
    assert rep.to_json_obj()["schema"] == 1
