"""Half-integral weight Hecke operators T_{l^2m} on q-expansions.

The working series is f = E_{2r}(24 tau)/eta(24 tau) = sum e_{2r}(n) q^(24n-1),
a weakly holomorphic form of weight lambda + 1/2 with lambda = 2r - 1 and
character chi = (12/.).  Its coefficients a_0(n) live on n == 23 (mod 24).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidOperand, InvalidParameter, PrecisionExhausted
from .numtheory import chi12, isprime, kronecker, valuation
from .qseries import QSeries
from .report import VerificationReport, timed
from .specialforms import e_series

F_WEIGHTS = (4, 6, 8, 10, 14)
MAX_COUNTEREXAMPLES = 25


@dataclass(frozen=True)
class HeckeContext:
    lam: int
    l: int

    def __post_init__(self):
        if self.lam < 1:
            raise InvalidParameter("lambda must be positive")
        if self.l < 5 or not isprime(self.l):
            raise InvalidParameter(f"Hecke operators here need a prime l >= 5, got {self.l}")

    @classmethod
    def for_r(cls, r: int, l: int) -> "HeckeContext":
        return cls(2 * r - 1, l)

    @property
    def r(self) -> int:
        return (self.lam + 1) // 2

    @property
    def chi_l(self) -> int:
        return chi12(self.l)

    def middle(self, n: int) -> int:
        """((-1)^lam n / l) chi(l) l^(lam-1), the weight on a(n) in T_{l^2}."""
        s = kronecker((-1) ** self.lam * n, self.l)
        return s * self.chi_l * self.l ** (self.lam - 1) if s else 0

    @property
    def top(self) -> int:
        """l^(2 lam - 1), the weight on a(n/l^2)."""
        return self.l ** (2 * self.lam - 1)


def build_f(two_r: int, prec: int) -> QSeries:
    """E_{2r}(24 tau)/eta(24 tau) with integral exponents, known below q^prec."""
    if two_r not in F_WEIGHTS:
        raise InvalidParameter(f"f is built for 2r in {F_WEIGHTS}, got {two_r}")
    n = _f_terms(prec)
    s = _f_base(two_r, n)
    return s.truncate(prec)


def _f_terms(prec: int) -> int:
    return max(1, -(-(prec + 1) // 24))


@lru_cache(maxsize=4)
def _f_base(two_r: int, n: int) -> QSeries:
    return e_series(two_r, n).dilate(24).shift(-1)


def _hecke_step(F: QSeries, ctx: HeckeContext) -> QSeries:
    """One application of T_{l^2}."""
    s = F.exponent_shift()
    L, P = F.lo + s, F.prec + s
    l2 = ctx.l * ctx.l
    nums, den = F.nums, F.den

    def a(e: int) -> int:
        return nums[e - L] if e >= L else 0

    out_prec = -(-P // l2)
    out_lo = min(L * l2, L, -(-L // l2), out_prec)
    top = ctx.top
    out = []
    for n in range(out_lo, out_prec):
        v = a(l2 * n)
        if L <= n:
            w = ctx.middle(n)
            if w:
                v += w * a(n)
        if n % l2 == 0 and n // l2 >= L:
            v += top * a(n // l2)
        out.append(v)
    return QSeries._raw(out, den, out_lo, out_prec, 0)


def hecke_powers(f: QSeries, ctx: HeckeContext, m: int) -> list[QSeries]:
    """[f|T_1, f|T_{l^2}, ..., f|T_{l^2m}] via T_{l^{2k+2}} = T_{l^2} T_{l^{2k}} - l^(2lam-1) T_{l^{2k-2}}."""
    if m < 0:
        raise InvalidParameter("m must be >= 0")
    if f.offset24 % 24:
        raise InvalidOperand("Hecke operators act on series with integral exponents")
    f = f.normalized()
    need = 24 * (ctx.l * ctx.l) ** m
    if f.prec < need:
        raise PrecisionExhausted(
            f"T_(l^{2 * m}) needs input known below q^{need} to leave 24 output coefficients")
    out = [f]
    for k in range(m):
        nxt = _hecke_step(out[-1], ctx)
        if k:
            nxt = nxt - out[-2].scale(ctx.top)
        out.append(nxt)
    return out


def hecke_T(f: QSeries, ctx: HeckeContext, m: int = 1) -> QSeries:
    """f | T_{l^2m}."""
    return hecke_powers(f, ctx, m)[-1]


def b_series(f: QSeries, ctx: HeckeContext, m: int, powers: list[QSeries] | None = None) -> QSeries:
    """B_m = f|T_{l^2m} - chi(l) l^(lam-1) f|T_{l^(2m-2)}; B_0 = f."""
    if m == 0:
        return f.normalized()
    F = powers if powers is not None and len(powers) > m else hecke_powers(f, ctx, m)
    return F[m] - F[m - 1].scale(ctx.chi_l * ctx.l ** (ctx.lam - 1))


# ---- c(m, k; n, l) ----------------------------------------------------------------


class CTable:
    """The integers c(m,k;n,l) with a_m(n) = sum_k c(m,k;n,l) a_0(l^2k n), built by recurrence."""

    def __init__(self, ctx: HeckeContext):
        self.ctx = ctx
        self._memo: dict = {}

    def __call__(self, m: int, k: int, n: int) -> int:
        if m < 0 or abs(k) > m:
            return 0
        key = (m, k, n)
        if key in self._memo:
            return self._memo[key]
        ctx, l2 = self.ctx, self.ctx.l ** 2
        if m == 0:
            v = 1
        elif k == -m:
            v = ctx.top ** m
        else:
            s = m - 1
            v = self(s, k - 1, l2 * n) + ctx.middle(n) * self(s, k, n) - ctx.top * self(s - 1, k, n)
            if n % l2 == 0:
                v += ctx.top * self(s, k + 1, n // l2)
        self._memo[key] = v
        return v


# ---- verification -------------------------------------------------------------------


def _coef(F: QSeries, e: int) -> int:
    c = F.at(e)
    if c.denominator != 1:
        raise InvalidOperand("expected integral coefficients")
    return c.numerator


def _a0(f: QSeries, e) -> int:
    """a_0 at a possibly non-integral index; zero off the integers."""
    if isinstance(e, int):
        return _coef(f, e)
    return 0


def window_indices(n_window: int) -> list[int]:
    """The first n_window exponents n == 23 (mod 24), starting at -1."""
    return [24 * t - 1 for t in range(n_window)]


def hecke_input_prec(l: int, m_max: int, n_window: int) -> int:
    top = max(window_indices(n_window))
    return max(l ** (2 * m_max + 2) * (top + 1) + 1, 24 * l ** 4)


def verify_hecke_structure(ctx: HeckeContext, m_max: int = 1, n_window: int = 20) -> VerificationReport:
    """Check the coefficient identities satisfied by f|T_{l^2m} and B_m on a window.

    Checked: leading terms of f|T_{l^2} and f|T_{l^4}; support on 23 mod 24;
    vanishing of f|T_{l^2m} mod l^(m(lam-1)); the three B_m identities; the
    c(m,k;n,l) expansion with its leading values and valuation bounds; the
    consequences for a_0(l^2m n).
    """
    l, lam = ctx.l, ctx.lam
    rep = VerificationReport("hecke-structure", {"r": ctx.r, "lambda": lam, "ell": l, "m_max": m_max},
                             window=[n_window])
    if m_max < 1:
        raise InvalidParameter("m_max must be >= 1")
    with timed(rep):
        P = hecke_input_prec(l, m_max, n_window)
        rep.prec = P
        f = build_f(2 * ctx.r, P)
        m_all = max(m_max, 2)
        F = hecke_powers(f, ctx, m_all)
        B = [b_series(f, ctx, m, F) for m in range(m_all + 1)]
        chi, l2 = ctx.chi_l, l * l
        counts: dict[str, int] = {}
        ns = window_indices(n_window)

        def bad(check, **info):
            counts.setdefault(check + ":failed", 0)
            counts[check + ":failed"] += 1
            if len(rep.counterexamples) < MAX_COUNTEREXAMPLES:
                rep.fail(check=check, **info)
            else:
                rep.status = "fail"

        def tick(check):
            counts[check] = counts.get(check, 0) + 1

        def low_terms(S: QSeries) -> dict[int, int]:
            s = S.exponent_shift()
            return {n + s: int(c) for n, c in S.items() if n + s < 23}

        # leading terms
        want = {
            "f-T2": {-l2: l ** (2 * lam - 1), -1: chi * l ** (lam - 1)},
            "f-T4": {-l2 * l2: l ** (4 * lam - 2), -l2: l ** (3 * lam - 2) * chi, -1: l ** (2 * lam - 2)},
            "B1-leading": {-l2: l ** (2 * lam - 1)},
            "B2-leading": {-l2 * l2: l ** (4 * lam - 2)},
        }
        got = {"f-T2": low_terms(F[1]), "f-T4": low_terms(F[2]),
               "B1-leading": low_terms(B[1]), "B2-leading": low_terms(B[2])}
        for key in want:
            tick(key)
            if got[key] != want[key]:
                bad(key, expected=want[key], computed=got[key])

        # support and vanishing through everything that is known
        for m in range(1, m_all + 1):
            s = F[m].exponent_shift()
            mod = l ** (m * (lam - 1))
            for idx, c in F[m].items():
                e = idx + s
                tick("support")
                if e % 24 != 23:
                    bad("support", m=m, exponent=e, value=c)
                tick("vanish")
                if c.numerator % mod:
                    bad("vanish", m=m, exponent=e, value=c, modulus=mod)
        for m, mod in ((1, l ** (2 * lam - 1)), (2, l ** (4 * lam - 2))):
            for idx, c in B[m].items():
                tick(f"b{m}-cong")
                if c.numerator % mod:
                    bad(f"b{m}-cong", exponent=idx + B[m].exponent_shift(), value=c, modulus=mod)

        # identities for B_m
        def a0(e):
            return _a0(f, e)

        for m in range(1, m_max + 1):
            for n in ns:
                lhs = _coef(B[m], l2 * n) - ctx.top * _coef(B[m - 1], n)
                rhs = a0(l2 ** (m + 1) * n) - chi * l ** (lam - 1) * a0(l2 ** m * n)
                tick("prop-b-1")
                if lhs != rhs:
                    bad("prop-b-1", m=m, n=n, lhs=lhs, rhs=rhs)
                bm = _coef(B[m], n)
                if n % l:
                    eps = kronecker((-1) ** lam * n, l)
                    rhs = a0(l2 ** m * n) + (1 - eps) * sum(
                        (-1) ** k * chi ** k * l ** ((lam - 1) * k) * a0(l2 ** (m - k) * n)
                        for k in range(1, m + 1))
                    tick("prop-b-2")
                    if bm != rhs:
                        bad("prop-b-2", m=m, n=n, lhs=bm, rhs=rhs)
                elif n % l2:
                    rhs = a0(l2 ** m * n) - chi * l ** (lam - 1) * a0(l2 ** (m - 1) * n)
                    tick("prop-b-3")
                    if bm != rhs:
                        bad("prop-b-3", m=m, n=n, lhs=bm, rhs=rhs)

        # c(m, k; n, l): expansion, leading values, valuation bounds
        c = CTable(ctx)
        for m in range(1, m_all + 1):
            for n in ns:
                if n >= F[m].prec + F[m].exponent_shift():
                    continue
                total = 0
                for k in range(-m, m + 1):
                    if k < 0:
                        q, r = divmod(n, l2 ** (-k))
                        if r:
                            continue  # a_0 vanishes there; the coefficient is immaterial
                        total += c(m, k, n) * a0(q)
                    else:
                        total += c(m, k, n) * a0(l2 ** k * n)
                    ck = c(m, k, n)
                    tick("c-ord")
                    if valuation(ck, l) < (m - k) * (lam - 1):
                        bad("c-ord", m=m, k=k, n=n, c=ck)
                tick("am-exp")
                if total != _coef(F[m], n):
                    bad("am-exp", m=m, n=n, lhs=_coef(F[m], n), rhs=total)
                tick("F-leading")
                if c(m, m, n) != 1 or c(m, -m, n) != l ** ((2 * lam - 1) * m):
                    bad("F-leading", m=m, n=n)

        # consequences for the coefficients a_0
        for n in ns:
            for m in range(1, m_max + 2):
                e = l2 ** m * n
                if e >= f.prec:
                    continue
                tick("a0-power")
                if a0(e) % l ** (m * (lam - 1)):
                    bad("a0-power", m=m, n=n, value=a0(e))
            if n % l == 0:
                continue
            for m, mod in ((1, l ** (2 * lam - 1)), (2, l ** (4 * lam - 2))):
                e = l2 ** m * n
                if e >= f.prec:
                    continue
                if kronecker(-n, l) == 1:
                    tick(f"second-{m}-zero")
                    if a0(e) % mod:
                        bad(f"second-{m}-zero", n=n, value=a0(e), modulus=mod)
                # n -> l n in the B_m identity for l || n
                e2 = l * e
                if e2 < f.prec:
                    tick(f"second-{m}-relation")
                    if (a0(e2) - chi * l ** (lam - 1) * a0(e2 // l2)) % mod:
                        bad(f"second-{m}-relation", n=l * n, modulus=mod)
        rep.details = {"checks": dict(sorted(counts.items())), "window_n": [ns[0], ns[-1]]}
    return rep
