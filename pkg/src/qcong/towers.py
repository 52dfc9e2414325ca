"""Generating-function towers L_{2r,l,k} and their expansions in Y_l.

L_{2r,l,0} = E_{2r}, L_{odd} = (Z_l L)|U_l and L_{even} = L|U_l.  Each family
below writes L_{2r,l,k} = prefactor * sum_j a(k,j) Y_l^j, where the rows
a(k, .) follow from a(1, .) by recurrences through the table m(i,j) of U_l
images of (g Z_l^i).  The m rows come from a block of seed rows and the
modular equation for Z_l.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import tables
from .errors import InvalidParameter, PrecisionExhausted, TableInconsistent
from .hauptmodul import LaurentPoly, Y, Z, derive_modular_equation, expand_in_Y
from .numtheory import delta, gamma, valuation
from .qseries import QSeries
from .specialforms import (eisenstein, eisenstein_chi7, eisenstein_e2_level, e_series, euler,
                           eta_quotient)


def _etaq(spec: dict[int, int], prec: int) -> QSeries:
    """Eta quotient with integral exponents, known below q^prec."""
    off = sum(d * e for d, e in spec.items())
    if off % 24:
        raise InvalidParameter("eta quotient has fractional exponents")
    return eta_quotient(spec, max(prec - off // 24, 1)).normalized()


# ---- Eisenstein quotients ---------------------------------------------------------


def quotient_polys(weight: int, l: int) -> tuple[list[int], list[int]]:
    try:
        return tables.EISENSTEIN_QUOTIENTS[(weight, l)]
    except KeyError:
        raise InvalidParameter(f"no Eisenstein quotient stored for weight {weight}, l={l}") from None


def _poly_in_Y(coeffs, y: QSeries, prec: int) -> QSeries:
    return LaurentPoly(dict(enumerate(coeffs))).evaluate(y, prec)


def tilde_E(weight: int, l: int, prec: int, form: str = "quotient") -> QSeries:
    """E_{2r}/Q(Y_l): the weight-2r form on Gamma0(l) with maximal vanishing at 0.

    ``form="closed"`` uses the eta-quotient expressions available for l = 5, 7.
    Weight 0 gives the constant 1.
    """
    if weight == 0:
        return QSeries.from_ints([1], prec)
    if form == "closed":
        if (weight, l) == (4, 5):
            return _etaq({1: 10, 5: -2}, prec)
        if (weight, l) == (6, 5):
            return eisenstein_e2_level(5, prec) * _etaq({1: 10, 5: -2}, prec)
        if (weight, l) == (4, 7):
            return eisenstein_chi7(prec) * _etaq({1: 7, 7: -1}, prec)
        if (weight, l) == (6, 7):
            return _etaq({1: 14, 7: -2}, prec)
        raise InvalidParameter(f"no closed form for weight {weight}, l={l}")
    if form != "quotient":
        raise InvalidParameter(f"unknown form {form!r}")
    _, Q = quotient_polys(weight, l)
    return eisenstein(weight, prec) / _poly_in_Y(Q, Y(l, prec), prec)


# ---- the towers themselves --------------------------------------------------------


def L_series(weight: int, l: int, k: int, prec: int) -> QSeries:
    """L_{weight,l,k} through q^(prec-1), by applying Z_l and U_l to E_weight."""
    if k < 0:
        raise InvalidParameter("k must be >= 0")
    if l not in (5, 7, 11, 13):
        raise InvalidParameter(f"towers are defined for l in (5, 7, 11, 13), got {l}")
    n = prec * l ** k
    s = eisenstein(weight, n)
    z = Z(l, n)
    for step in range(1, k + 1):
        if step % 2:
            s = (z.truncate(s.prec) * s).atkin_U(l)
        else:
            s = s.atkin_U(l)
    return s.truncate(prec)


def L_series_from_e(weight: int, l: int, k: int, prec: int) -> QSeries:
    """The same tower built from the coefficients e_weight(l^k n + delta)."""
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    A, B = l ** k, delta(l, k)
    need = A * (prec - 1) + B + 1
    e = e_series(weight, need)
    seq = QSeries([e.coeff(A * n + B) for n in range(prec - 1)], prec, lo=1)
    base = euler(prec).dilate(l).truncate(prec) if k % 2 else euler(prec)
    return base * seq


def extract_progression(weight: int, l: int, k: int, count: int) -> list[Fraction]:
    """e_weight(l^k n + delta_{l,k}) for n < count, read off L_{weight,l,k}."""
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    L = L_series(weight, l, k, count + 1)
    base = euler(count + 1).dilate(l).truncate(count + 1) if k % 2 else euler(count + 1)
    s = L / base
    return [s.coeff(n + 1) for n in range(count)]


# ---- m tables ---------------------------------------------------------------------


class MTable:
    """Rows m(i, .) from seed rows and a modular equation, optionally mod a modulus."""

    def __init__(self, l: int, seeds: dict[int, dict[int, int]], psi: dict, modulus: int | None = None):
        self.l = l
        self.modulus = modulus
        self.psi = dict(psi)
        top = [(s, c) for (r, s), c in self.psi.items() if r == l]
        if len(top) != 1:
            raise InvalidParameter("modular equation must have a single r = l term")
        self.top_s, self.top_c = top[0]
        rows = sorted(seeds)
        if rows != list(range(rows[0], rows[0] + len(rows))) or len(rows) < l:
            raise InvalidParameter(f"need {l} consecutive seed rows")
        self.rows = {i: self._reduce(seeds[i]) for i in rows}
        self.lo, self.hi = rows[0], rows[-1]

    def _reduce(self, row: dict) -> dict[int, int]:
        if self.modulus is None:
            return {j: c for j, c in row.items() if c}
        out = {}
        for j, c in row.items():
            c %= self.modulus
            if c:
                out[j] = c
        return out

    def row(self, i: int) -> dict[int, int]:
        while i > self.hi:
            self._extend_up()
        while i < self.lo:
            self._extend_down()
        return self.rows[i]

    def _extend_up(self):
        i = self.hi + 1
        acc: dict[int, int] = {}
        for (r, s), c in self.psi.items():
            for j, v in self.rows[i - r].items():
                acc[j + s] = acc.get(j + s, 0) + c * v
        self.rows[i] = self._reduce(acc)
        self.hi = i

    def _extend_down(self):
        t = self.lo - 1
        l, s0 = self.l, self.top_s
        acc: dict[int, int] = {}
        for j, v in self.rows[t + l].items():
            acc[j - s0] = acc.get(j - s0, 0) + v
        for (r, s), c in self.psi.items():
            if r == l:
                continue
            for j, v in self.rows[t + l - r].items():
                acc[j + s - s0] = acc.get(j + s - s0, 0) - c * v
        out = {}
        for j, v in acc.items():
            if v % self.top_c:
                raise TableInconsistent("downward recurrence left a non-integral entry")
            out[j] = v // self.top_c
        self.rows[t] = self._reduce(out)
        self.lo = t

    def get(self, i: int, j: int) -> int:
        return self.row(i).get(j, 0)


# ---- families ---------------------------------------------------------------------


@dataclass(frozen=True)
class TowerFamily:
    name: str
    weight: int
    l: int
    prefactor: Callable[[int], QSeries]
    m_prefactor: Callable[[int], QSeries] | None
    jmin: int
    even_step: tuple[int, int, int]  # a(2i, j) = sum_k a(2i-1, k) m(a*k + b, k + j + c)
    odd_step: tuple[int, int, int]   # a(2i+1, j) = sum_k a(2i, k) m(a*k + b, k + j + c)
    m_bound: Callable[[int, int], int]
    a_bound: Callable[[int, int], int]

    @property
    def published_seeds(self) -> dict[int, dict[int, int]]:
        return tables.M_SEEDS[self.name]

    @property
    def seeds(self) -> dict[int, dict[int, int]]:
        """Seed rows with known misprints corrected (see check_m_seeds)."""
        return tables.corrected_seeds(self.name)

    @property
    def published_a1(self) -> dict[int, int]:
        return tables.A1[self.name]

    @property
    def a1(self) -> dict[int, int]:
        return tables.corrected_a1(self.name)

    def psi(self) -> dict:
        return derive_modular_equation(self.l).psi

    def m_table(self, modulus: int | None = None) -> MTable:
        return MTable(self.l, dict(self.seeds), self.psi(), modulus)


def _fl(a: int, b: int) -> int:
    return a // b


def _family_table() -> dict[str, TowerFamily]:
    e25 = lambda p: eisenstein_e2_level(5, p)
    fams = [
        TowerFamily(
            "L45", 4, 5,
            prefactor=lambda p: _etaq({1: 4, 5: 4}, p),
            m_prefactor=None, jmin=0,
            even_step=(6, -4, 0), odd_step=(6, -3, 0),
            m_bound=lambda i, j: _fl(5 * j - i - 1, 2),
            a_bound=lambda k, j: k + (_fl(5 * j, 2) if k % 2 else _fl(5 * j + 1, 2)),
        ),
        TowerFamily(
            "L65", 6, 5,
            prefactor=lambda p: -(e25(p) * _etaq({1: 4, 5: 4}, p)),
            m_prefactor=e25, jmin=0,
            even_step=(6, -4, 0), odd_step=(6, -3, 0),
            m_bound=lambda i, j: _fl(5 * j - i + 1, 2),
            a_bound=lambda k, j: 2 * k + (_fl(5 * j, 2) if k % 2 else _fl(5 * j + 1, 2)),
        ),
        TowerFamily(
            "L47", 4, 7,
            prefactor=lambda p: eisenstein_chi7(p) * _etaq({1: 3, 7: 3}, p),
            m_prefactor=eisenstein_chi7, jmin=0,
            even_step=(4, -3, 0), odd_step=(4, -2, 0),
            m_bound=lambda i, j: _fl(7 * j - 2 * i + 1, 4),
            a_bound=lambda k, j: k + (_fl(7 * j + 1, 4) if k % 2 else _fl(7 * j + 3, 4)),
        ),
        TowerFamily(
            "L67", 6, 7,
            prefactor=lambda p: -_etaq({1: 14, 7: -2}, p),
            m_prefactor=None, jmin=1,
            even_step=(4, -14, -4), odd_step=(4, -13, -4),
            m_bound=lambda i, j: _fl(7 * j - 2 * i - 1, 4),
            a_bound=lambda k, j: (2 * k - 2 + _fl(7 * j - 5, 4)) if k % 2 else
            (2 * k + _fl(7 * j - 4, 4) - 2 * gamma(j, 2) - 4 * gamma(j, 3)),
        ),
        TowerFamily(
            "L413", 4, 13,
            prefactor=lambda p: tilde_E(4, 13, p),
            m_prefactor=lambda p: tilde_E(4, 13, p), jmin=1,
            even_step=(2, 0, 0), odd_step=(2, 1, 0),
            m_bound=lambda i, j: _fl(13 * j - 7 * i + 3, 14),
            a_bound=lambda k, j: (k - 1 + _fl(13 * j - 7, 14)) if k % 2 else
            (k + _fl(13 * j - 13, 14) - gamma(j, 3)),
        ),
        TowerFamily(
            "L613", 6, 13,
            prefactor=lambda p: -tilde_E(6, 13, p),
            m_prefactor=lambda p: tilde_E(6, 13, p), jmin=1,
            even_step=(2, 0, 0), odd_step=(2, 1, 0),
            m_bound=lambda i, j: _fl(13 * j - 7 * i + 5, 14),
            a_bound=lambda k, j: (2 * k - 2 + _fl(13 * j - 7, 14)) if k % 2 else
            (2 * k + _fl(13 * j - 12, 14) - gamma(j, 3) - 2 * gamma(j, 4) - 3 * gamma(j, 5)),
        ),
    ]
    return {f.name: f for f in fams}


FAMILIES = _family_table()


def family(name: str) -> TowerFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise InvalidParameter(f"unknown tower family {name!r}; choose from {sorted(FAMILIES)}") from None


# ---- a rows -----------------------------------------------------------------------


def a_rows(fam: TowerFamily, kmax: int, modulus: int | None = None,
           mt: MTable | None = None) -> dict[int, dict[int, int]]:
    """Rows a(k, .) for 1 <= k <= kmax by the family recurrences."""
    if kmax < 1:
        raise InvalidParameter("kmax must be >= 1")
    if mt is None:
        mt = fam.m_table(modulus)
    rows = {1: {j: (c % modulus if modulus else c) for j, c in fam.a1.items()}}
    for k in range(2, kmax + 1):
        a, b, c = fam.even_step if k % 2 == 0 else fam.odd_step
        acc: dict[int, int] = {}
        for kk, v in rows[k - 1].items():
            for t, w in mt.row(a * kk + b).items():
                j = t - kk - c
                acc[j] = acc.get(j, 0) + v * w
        if modulus:
            rows[k] = {j: x % modulus for j, x in acc.items() if x % modulus}
        else:
            rows[k] = {j: x for j, x in acc.items() if x}
    return rows


def a_table(fam: TowerFamily | str, k: int, jmax: int | None = None) -> LaurentPoly:
    """Row a(k, .) by the recurrences, optionally cut at j <= jmax."""
    fam = family(fam) if isinstance(fam, str) else fam
    row = a_rows(fam, k)[k]
    return LaurentPoly({j: c for j, c in row.items() if jmax is None or j <= jmax})


def m_table(fam: TowerFamily | str, i: int, prec: int | None = None) -> LaurentPoly:
    """Row m(i, .): from the (corrected) seeds and the modular-equation recurrence,
    or by direct q-series expansion when prec is given."""
    fam = family(fam) if isinstance(fam, str) else fam
    if prec is not None:
        return m_row_direct(fam, i, prec)
    return LaurentPoly(dict(fam.m_table().row(i)))


# ---- checks -----------------------------------------------------------------------


def m_row_direct(fam: TowerFamily, i: int, prec: int) -> LaurentPoly:
    """(g Z^i)|U_l divided by g, expanded in Y_l from q-series."""
    l = fam.l
    n = prec * l + 2 * l
    zi = Z(l, n + max(0, -i) * ((l * l - 1) // 24) + 2) ** i
    g = fam.m_prefactor(n) if fam.m_prefactor else None
    s = zi if g is None else g * zi
    u = s.atkin_U(l)
    gp = fam.m_prefactor(u.prec) if fam.m_prefactor else None
    return expand_in_Y(u, gp, Y(l, u.prec + 2))


def check_m_seeds(fam: TowerFamily, prec: int = 60, published: bool = True) -> dict:
    """Compare seed rows (published, or errata-corrected) with direct q-series expansion."""
    mismatches = []
    seeds = fam.published_seeds if published else fam.seeds
    for i, row in sorted(seeds.items()):
        got = m_row_direct(fam, i, prec).as_ints()
        if got != row:
            mismatches.append({"i": i, "published": row, "computed": got})
    return {"family": fam.name, "rows": sorted(seeds), "mismatches": mismatches,
            "status": "pass" if not mismatches else "fail"}


def derive_a1(fam: TowerFamily, prec: int = 300) -> dict[int, int]:
    """a(1, .) from scratch: expand L_{2r,l,1}/prefactor in Y_l."""
    L = L_series(fam.weight, fam.l, 1, prec)
    return expand_in_Y(L, fam.prefactor(prec), Y(fam.l, prec)).as_ints()


def check_a1(fam: TowerFamily, prec: int = 300, published: bool = True) -> dict:
    got = derive_a1(fam, prec)
    want = fam.published_a1 if published else fam.a1
    diff = {j: {"published": want.get(j, 0), "computed": got.get(j, 0)}
            for j in sorted(set(got) | set(want)) if got.get(j, 0) != want.get(j, 0)}
    return {"family": fam.name, "mismatches": diff, "status": "pass" if not diff else "fail"}


def check_representation(fam: TowerFamily, k: int, prec: int) -> dict:
    """L_k == prefactor * sum a(k,j) Y^j through q^(prec-1), with a(k,.) from the
    recurrences compared against direct extraction."""
    t0 = time.time()
    L = L_series(fam.weight, fam.l, k, prec)
    rows = a_rows(fam, k)
    ak = rows[k]
    pref = fam.prefactor(prec)
    y = Y(fam.l, prec)
    direct = expand_in_Y(L, pref, y, truncated=True)
    top = max(ak) if ak else 0
    # coefficients of Y^j with j >= prec do not affect the series at this precision
    rec_visible = LaurentPoly({j: c for j, c in ak.items() if j < prec})
    recomposed = pref * rec_visible.evaluate(y, prec)
    ok_series = recomposed.agrees_with(L, prec)
    ok_rows = direct == rec_visible
    return {
        "family": fam.name, "k": k, "prec": prec,
        "degree": top, "terms": len(ak), "rows_compared": sum(1 for j in ak if j < prec),
        "series_match": ok_series, "rows_match": ok_rows,
        "status": "pass" if ok_series and ok_rows else "fail",
        "millis": int(1000 * (time.time() - t0)),
    }


def check_valuation_bounds(fam: TowerFamily, kmax: int = 8, jmax: int = 40) -> dict:
    """Check the l-adic lower bounds for m(i,j) and a(k,j) over a grid.

    Arithmetic is exact modulo l^B with B above every bound on the grid, so
    an entry is certified to satisfy bound b by being 0 mod l^b.
    """
    t0 = time.time()
    l = fam.l
    a_grid = [(k, j) for k in range(1, kmax + 1) for j in range(fam.jmin, jmax + 1)]
    B = max(fam.a_bound(k, j) for k, j in a_grid) + 1
    # rows of m touched by the recurrences for the j-range of interest
    mt = fam.m_table(l ** (B + 8))
    rows = a_rows(fam, kmax, l ** B, mt)
    failures = []
    for k, j in a_grid:
        v = rows[k].get(j, 0)
        b = fam.a_bound(k, j)
        if b > 0 and v % l ** b:
            failures.append({"kind": "a", "k": k, "j": j, "bound": b, "valuation": valuation(v, l)})
    # every m entry that is nonzero mod l^(B+8) has its true valuation visible
    i_lo, i_hi = mt.lo, mt.hi
    m_checked = 0
    for i in range(i_lo, i_hi + 1):
        for j, v in mt.row(i).items():
            if j > jmax:
                continue
            m_checked += 1
            b = fam.m_bound(i, j)
            if valuation(v, l) < b:
                failures.append({"kind": "m", "i": i, "j": j, "bound": b, "valuation": valuation(v, l)})
    return {
        "family": fam.name, "kmax": kmax, "jmax": jmax, "modulus_exponent": B,
        "m_rows": [i_lo, i_hi], "m_entries_checked": m_checked,
        "failures": failures, "status": "pass" if not failures else "fail",
        "millis": int(1000 * (time.time() - t0)),
    }
