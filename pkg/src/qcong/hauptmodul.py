"""Hauptmoduls Y_l, Z_l, Laurent polynomials in Y and modular equations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import (AmbiguousFit, FitFailed, InvalidParameter, NotPolynomialInY,
                     PrecisionExhausted)
from .linalg import solve
from .qseries import QSeries
from .specialforms import eta_quotient

Y_PRIMES = (5, 7, 13)
Z_PRIMES = (5, 7, 11, 13)


def Y(l: int, prec: int) -> QSeries:
    """(eta(l tau)/eta(tau))^(24/(l-1)), indexed by exponent: q + O(q^prec)."""
    if l not in Y_PRIMES:
        raise InvalidParameter(f"Y_l is defined here for l in {Y_PRIMES}, got {l}")
    e = 24 // (l - 1)
    return eta_quotient({l: e, 1: -e}, max(prec - 1, 1)).normalized()


def Z(l: int, prec: int) -> QSeries:
    """eta(l^2 tau)/eta(tau), indexed by exponent, leading q^((l^2-1)/24)."""
    if l not in Z_PRIMES:
        raise InvalidParameter(f"Z_l is defined here for l in {Z_PRIMES}, got {l}")
    s = (l * l - 1) // 24
    return eta_quotient({l * l: 1, 1: -1}, max(prec - s, 1)).normalized()


def hauptmodul(kind: str, l: int, prec: int) -> QSeries:
    if kind == "Y":
        return Y(l, prec)
    if kind == "Z":
        return Z(l, prec)
    raise InvalidParameter(f"kind must be 'Y' or 'Z', got {kind!r}")


class LaurentPoly:
    """Finite sum c_j Y^j with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self.coeffs = {int(j): Fraction(c) for j, c in (coeffs or {}).items() if c}

    def __getitem__(self, j: int) -> Fraction:
        return self.coeffs.get(j, Fraction(0))

    def degrees(self) -> tuple[int, int] | None:
        if not self.coeffs:
            return None
        return min(self.coeffs), max(self.coeffs)

    def evaluate(self, y: QSeries, prec: int) -> QSeries:
        """sum c_j y^j as a series with exponents below ``prec``."""
        out = QSeries.from_ints([], prec)
        for j, c in sorted(self.coeffs.items()):
            out = out + (y ** j) * c
        return out

    def as_ints(self) -> dict[int, int]:
        out = {}
        for j, c in self.coeffs.items():
            if c.denominator != 1:
                raise InvalidParameter("coefficient is not an integer")
            out[j] = c.numerator
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, Mapping):
            return self == LaurentPoly(other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return "LaurentPoly({" + ", ".join(f"{j}: {c}" for j, c in sorted(self.coeffs.items())) + "})"


def expand_in_Y(s: QSeries, prefactor: QSeries | None, y: QSeries, jmin: int | None = None,
                jmax: int | None = None, margin: int = 8, truncated: bool = False) -> LaurentPoly:
    """Write s/prefactor as a finite Laurent polynomial in y.

    ``y`` must have integral exponents and leading term c*q.  The expansion is
    accepted only once the remainder vanishes through at least ``margin``
    coefficients beyond the highest extracted power.  With ``truncated=True``
    the coefficients of Y^j for every j below the precision are returned
    without asking the expansion to terminate.
    """
    t = s if prefactor is None else s / prefactor
    if t.offset24 % 24:
        raise NotPolynomialInY("series has fractional exponents")
    t = t.normalized()
    y = y.normalized()
    vy = y.valuation()
    if vy != 1:
        raise InvalidParameter("hauptmodul must have leading exponent 1")
    lead = y.coeff(1)
    powers: dict[int, QSeries] = {}
    out: dict[int, Fraction] = {}
    resid = t
    last = None
    while True:
        v = resid.valuation()
        if v is None:
            break
        if jmin is not None and v < jmin:
            raise NotPolynomialInY(f"term Y^{v} below requested minimum {jmin}")
        if jmax is not None and v > jmax:
            raise NotPolynomialInY(f"term Y^{v} above requested maximum {jmax}")
        if truncated and v >= resid.prec:
            break
        if not truncated and resid.prec - v - 1 < margin:
            raise PrecisionExhausted(f"expansion in Y not certified below q^{resid.prec}")
        if v not in powers:
            powers[v] = y ** v
        c = resid.coeff(v) / lead ** v
        out[v] = c
        resid = resid - powers[v] * c
        last = v
    top = last if last is not None else (jmin if jmin is not None else 0) - 1
    if not truncated and resid.prec - top - 1 < margin:
        raise PrecisionExhausted(f"expansion in Y not certified below q^{resid.prec}")
    return LaurentPoly(out)


# ---- rational fits ----------------------------------------------------------------


def _columns(series: list[QSeries], start: int, stop: int) -> list[list[Fraction]]:
    return [[c.coeff(n) for n in range(start, stop)] for c in series]


def fit_linear(target: QSeries, basis: list[QSeries], margin: int = 10) -> list[Fraction]:
    """Unique exact x with target == sum x_j basis_j, verified through all common precision."""
    allser = [target.normalized()] + [b.normalized() for b in basis]
    lo = min(min(b.lo for b in allser), 0)
    prec = min(b.prec for b in allser)
    n = len(basis)
    stop = min(prec, lo + n + margin)
    if stop - lo < n:
        raise PrecisionExhausted("not enough coefficients to determine the fit")
    cols = _columns(allser[1:], lo, stop)
    rhs = [allser[0].coeff(i) for i in range(lo, stop)]
    try:
        x = solve(cols, rhs)
    except AmbiguousFit:
        # the first window may be degenerate; retry on everything we have
        cols = _columns(allser[1:], lo, prec)
        rhs = [allser[0].coeff(i) for i in range(lo, prec)]
        x = solve(cols, rhs)
    resid = allser[0]
    for c, b in zip(x, allser[1:]):
        if c:
            resid = resid - b * c
    if resid.truncate(prec).valuation() is not None:
        raise FitFailed("fit does not hold through the available precision")
    return x


def fit_rational_in_Y(A: QSeries, B: QSeries, y: QSeries, degP: int, degQ: int,
                      margin: int = 20) -> tuple[list[Fraction], list[Fraction]]:
    """P, Q with A/B == P(y)/Q(y), Q(0) = 1, deg P <= degP, deg Q <= degQ."""
    y = y.normalized()
    A = A.normalized()
    B = B.normalized()
    ypow = [y ** i for i in range(max(degP, degQ) + 1)]
    # B*P(y) - A*(Q(y) - 1) = A
    basis = [B * ypow[i] for i in range(degP + 1)] + [-(A * ypow[i]) for i in range(1, degQ + 1)]
    x = fit_linear(A, basis, margin)
    P = x[: degP + 1]
    Q = [Fraction(1)] + x[degP + 1:]
    return P, Q


def minimal_rational_fit(A: QSeries, B: QSeries, y: QSeries, max_deg: int):
    """Smallest D with A/B == P(y)/Q(y), deg P, deg Q <= D; returns (D, P, Q)."""
    for D in range(max_deg + 1):
        try:
            P, Q = fit_rational_in_Y(A, B, y, D, D)
        except FitFailed:
            continue
        return D, P, Q
    raise FitFailed(f"no rational expression of degree <= {max_deg}")


# ---- modular equations ------------------------------------------------------------


def modeq_index_set(l: int) -> list[tuple[int, int]]:
    """(r, s) pairs allowed in Z^l = sum psi(r,s) Y(l tau)^s Z^(l-r)."""
    if l == 5:
        return [(r, 1) for r in range(1, 6)]
    if l == 7:
        return [(r, s) for s in (1, 2) for r in range(1, 8)]
    if l == 13:
        return [(r, s) for r in range(1, 14) for s in range((r + 2) // 2, 8)]
    raise InvalidParameter(f"modular equations are available for l in {Y_PRIMES}")


@dataclass
class ModularEquation:
    """Z^l = sum_{r,s} psi[(r,s)] * Y(l tau)^s * Z^(l-r)."""

    l: int
    psi: dict[tuple[int, int], int] = field(default_factory=dict)

    def residual(self, prec: int) -> QSeries:
        l = self.l
        z = Z(l, prec)
        yl = Y(l, -(-prec // l) + 1).dilate(l).truncate(prec)
        zp = {0: QSeries.from_ints([1], prec)}
        for i in range(1, l + 1):
            zp[i] = zp[i - 1] * z
        ys: dict[int, QSeries] = {}
        out = zp[l]
        for (r, s), c in self.psi.items():
            if s not in ys:
                ys[s] = yl ** s
            out = out - ys[s] * zp[l - r] * c
        return out

    def verify(self, prec: int) -> bool:
        return self.residual(prec).valuation() is None

    def row_terms(self) -> dict[int, dict[int, int]]:
        """psi grouped by r: {r: {s: psi}}."""
        out: dict[int, dict[int, int]] = {}
        for (r, s), c in self.psi.items():
            out.setdefault(r, {})[s] = c
        return out


@lru_cache(maxsize=None)
def derive_modular_equation(l: int, extra: int = 500) -> ModularEquation:
    """Solve for psi over the standard index set, verified ``extra`` coefficients past the fit."""
    idx = modeq_index_set(l)
    smax = max(s for _, s in idx)
    lead = l * (l * l - 1) // 24
    prec = lead + len(idx) + extra
    z = Z(l, prec)
    yl = Y(l, -(-prec // l) + 1).dilate(l).truncate(prec)
    zp = [QSeries.from_ints([1], prec)]
    for _ in range(l):
        zp.append(zp[-1] * z)
    yp = [QSeries.from_ints([1], prec)]
    for _ in range(smax):
        yp.append(yp[-1] * yl)
    basis = [yp[s] * zp[l - r] for r, s in idx]
    x = fit_linear(zp[l], basis, margin=20)
    psi = {}
    for (r, s), c in zip(idx, x):
        if c:
            if c.denominator != 1:
                raise FitFailed(f"non-integral coefficient psi({r},{s}) = {c}")
            psi[(r, s)] = c.numerator
    eq = ModularEquation(l, psi)
    if not eq.verify(prec):
        raise FitFailed("derived modular equation fails verification")
    return eq
