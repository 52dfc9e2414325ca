"""Rank and crank moments, symmetrized moments, spt_k and quasi-modular fitting.

Moments come only from generating functions:

    R_2k = (2/(q;q)) sum_n (-1)^(n+1) q^(n(3n-1)/2) (1-q^n) sum_m m^2k q^(nm)
    C_2k = (2/(q;q)) sum_n (-1)^(n+1) q^(n(n-1)/2)  (1-q^n) sum_m m^2k q^(nm)

and the symmetrized versions from the Andrews/Garvan series.  Closed formulas
express each moment as a combination of n^j e_2r(n), n^j N_2(n) and
n^j p_23(n-1); they are stored as text and parsed into Formula objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import InvalidParameter, PrecisionExhausted
from .hauptmodul import fit_linear
from .qseries import QSeries
from .specialforms import delta, e_series, eisenstein, partition_power, partitions

KINDS = ("rank", "crank")


def _check_order(two_k: int):
    if not isinstance(two_k, int) or two_k < 2 or two_k % 2:
        raise InvalidParameter(f"moment order must be even and >= 2, got {two_k}")


def _gap(kind: str, n: int) -> int:
    if kind == "rank":
        return n * (3 * n - 1) // 2
    if kind == "crank":
        return n * (n - 1) // 2
    raise InvalidParameter(f"kind must be one of {KINDS}, got {kind!r}")


@lru_cache(maxsize=32)
def moment_series(kind: str, two_k: int, prec: int) -> QSeries:
    """R_2k (kind='rank') or C_2k (kind='crank'): coefficients N_2k(n) or M_2k(n)."""
    _check_order(two_k)
    nums = [0] * prec
    n = 1
    while _gap(kind, n) < prec:
        a = _gap(kind, n)
        sign = 1 if n % 2 else -1
        # (1 - q^n) sum_m m^2k q^(nm) = sum_m (m^2k - (m-1)^2k) q^(nm), m >= 1
        m, prev = 1, 0
        e = a + n
        while e < prec:
            cur = m ** two_k
            nums[e] += sign * (cur - prev)
            prev = cur
            m += 1
            e += n
        n += 1
    return QSeries.from_ints(nums, prec) * partitions(prec).scale(2)


@lru_cache(maxsize=32)
def symmetrized_series(kind: str, two_k: int, prec: int) -> QSeries:
    """sum eta_2k(n) q^n (rank) or sum mu_2k(n) q^n (crank)."""
    _check_order(two_k)
    k = two_k // 2
    nums = [0] * prec
    n = 1
    while _gap(kind, n) + k * n < prec:
        a = _gap(kind, n) + k * n
        sign = 1 if n % 2 else -1
        # (1 + q^n) / (1 - q^n)^2k = sum_j (C(j+2k-1, 2k-1) + C(j+2k-2, 2k-1)) q^(nj)
        j = 0
        while a + n * j < prec:
            c = comb(j + two_k - 1, two_k - 1) + (comb(j + two_k - 2, two_k - 1) if j else 0)
            nums[a + n * j] += sign * c
            j += 1
        n += 1
    return QSeries.from_ints(nums, prec) * partitions(prec)


def spt_sequence(k: int, count: int) -> list[int]:
    """spt_k(n) = mu_2k(n) - eta_2k(n) for 0 <= n < count."""
    if k < 1:
        raise InvalidParameter("spt_k needs k >= 1")
    d = symmetrized_series("crank", 2 * k, count) - symmetrized_series("rank", 2 * k, count)
    out = d.int_list(0, count)
    neg = [n for n, v in enumerate(out) if v < 0]
    if neg:
        raise ArithmeticError(f"spt_{k} negative at n = {neg[0]}; the series are inconsistent")
    return out


# ---- sequences --------------------------------------------------------------------


def sequence_series(name: str, prec: int) -> QSeries:
    """Generating series (integral exponents from 0) for a named sequence."""
    if name == "p":
        return partitions(prec)
    if name.startswith("p_"):
        return partition_power(int(name[2:]), prec)
    if name == "p23s":
        return partition_power(23, prec).shift(1).truncate(prec)
    if name.startswith("e") and name[1:].isdigit():
        k = int(name[1:])
        return partitions(prec) if k == 0 else e_series(k, prec)
    if name == "spt":
        return (moment_series("crank", 2, prec) - moment_series("rank", 2, prec)).scale(Fraction(1, 2))
    if name.startswith("spt") and name[3:].isdigit():
        k = int(name[3:])
        return symmetrized_series("crank", 2 * k, prec) - symmetrized_series("rank", 2 * k, prec)
    for prefix, kind, sym in (("M", "crank", False), ("N", "rank", False),
                              ("mu", "crank", True), ("eta", "rank", True)):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            order = int(name[len(prefix):])
            if order == 0:
                return partitions(prec)
            return symmetrized_series(kind, order, prec) if sym else moment_series(kind, order, prec)
    raise InvalidParameter(f"unknown sequence {name!r}")


class SequenceStore:
    """Cache of exact sequences; each is computed once, to the largest index requested."""

    def __init__(self):
        self._data: dict[str, list[Fraction]] = {}

    def ensure(self, name: str, count: int) -> None:
        have = self._data.get(name)
        if have is not None and len(have) >= count:
            return
        s = sequence_series(name, max(count, 1))
        self._data[name] = [s.coeff(n) for n in range(max(count, 1))]

    def get(self, name: str, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        data = self._data.get(name)
        if data is None or n >= len(data):
            raise PrecisionExhausted(f"{name}({n}) not computed")
        return data[n]

    def values(self, name: str, count: int) -> list[Fraction]:
        self.ensure(name, count)
        return self._data[name][:count]

    def size(self, name: str) -> int:
        return len(self._data.get(name, ()))


# ---- closed formulas --------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    npow: int
    seq: str


@dataclass(frozen=True)
class Formula:
    id: str
    target: str
    terms: tuple[Term, ...]

    def sequences(self) -> set[str]:
        return {t.seq for t in self.terms}

    def evaluate(self, store: SequenceStore, n: int) -> Fraction:
        return sum((t.coeff * n ** t.npow * store.get(t.seq, n) for t in self.terms), Fraction(0))


def parse_terms(text: str) -> tuple[Term, ...]:
    """'1/20 e4; -12 n^2 p' -> terms.  A factor 'n' or 'n^j' multiplies by n^j."""
    out = []
    for part in text.split(";"):
        words = part.split()
        if not words:
            continue
        c = Fraction(words[0])
        npow = 0
        for w in words[1:-1]:
            if w == "n":
                npow = 1
            elif w.startswith("n^"):
                npow = int(w[2:])
            else:
                raise InvalidParameter(f"bad factor {w!r} in {part!r}")
        out.append(Term(c, npow, words[-1]))
    return tuple(out)


_FORMULA_TEXT = {
    # Dyson, Andrews and the binomial relations
    "M2-repn": ("M2", "2 n p"),
    "spt-N2": ("spt", "1 n p; -1/2 N2"),
    "spt-M2-N2": ("spt", "1/2 M2; -1/2 N2"),
    "eta2-N2": ("eta2", "1/2 N2"),
    "mu2-M2": ("mu2", "1/2 M2"),
    "mu4-M4": ("mu4", "1/24 M4; -1/24 M2"),
    "mu6-M6": ("mu6", "1/720 M6; -1/144 M4; 1/180 M2"),
    "eta4-N4": ("eta4", "1/24 N4; -1/24 N2"),
    "eta6-N6": ("eta6", "1/720 N6; -1/144 N4; 1/180 N2"),
    # crank moments
    "M4": ("M4", "1/20 e4; -1/20 p; 2 n p; -12 n^2 p"),
    "M6": ("M6", "-11/378 e6; 1/14 e4; -3/14 n e4; -8/189 p; 11/6 n p; -20 n^2 p; 40 n^3 p"),
    "M8": ("M8", "83/2160 e8; -2/27 e6; 4/27 n e6; 71/1080 e4; -5/9 n e4; 2/3 n^2 e4; "
                 "-13/432 p; 41/27 n p; -70/3 n^2 p; 112 n^3 p; -112 n^4 p"),
    "M10": ("M10", "-2173/25740 e10; 83/540 e8; -83/360 n e8; -47/468 e6; 70/117 n e6; "
                   "-20/39 n^2 e6; 61/1188 e4; -103/132 n e4; 30/11 n^2 e4; -20/11 n^3 e4; "
                   "-2/99 p; 85/72 n p; -70/3 n^2 p; 180 n^3 p; -480 n^4 p; 288 n^5 p"),
    "M12": ("M12", "1892286317/6856799040 e12; -2173/4446 e10; 2173/3705 n e10; "
                   "42911/146880 e8; -913/680 n e8; 913/1020 n^2 e8; -4565/44226 e6; "
                   "407/351 n e6; -352/117 n^2 e6; 176/117 n^3 e6; 5827/157248 e4; "
                   "-2749/3276 n e4; 141/26 n^2 e4; -140/13 n^3 e4; 60/13 n^4 e4; "
                   "-8009/606528 p; 571/648 n p; -2299/108 n^2 p; 6116/27 n^3 p; "
                   "-3124/3 n^4 p; 1760 n^5 p; -704 n^6 p; -17147966/26113581 p23s"),
    "M14": ("M14", "-120667369/96279840 e14; 1892286317/866518560 e12; "
                   "-1892286317/866518560 n e12; -767069/615600 e10; 23903/5130 n e10; "
                   "-2173/855 n^2 e10; 12236939/31395600 e8; -8059051/2325600 n e8; "
                   "83083/11628 n^2 e8; -83083/29070 n^3 e8; -12067/132192 e6; "
                   "13123/8262 n e6; -3619/459 n^2 e6; 616/51 n^3 e6; -616/153 n^4 e6; "
                   "199/7776 e4; -2023/2592 n e4; 415/54 n^2 e4; -259/9 n^3 e4; "
                   "112/3 n^4 e4; -56/5 n^5 e4; -31/3645 p; 14917/23328 n p; "
                   "-5915/324 n^2 p; 4459/18 n^3 p; -44408/27 n^4 p; 74984/15 n^5 p; "
                   "-5824 n^6 p; 1664 n^7 p; -240071524/46200951 p23s; "
                   "240071524/46200951 n p23s"),
    # rank moments
    "N4": ("N4", "2/15 e4; -2/15 p; 4 n p; -36 n^2 p; 1 N2; -12 n N2"),
    "N6": ("N6", "-1/21 e6; 5/21 e4; -12/7 n e4; -4/21 p; 8 n p; -108 n^2 p; 432 n^3 p; "
                 "1 N2; -24 n N2; 108 n^2 N2"),
    "N8": ("N8", "26/495 e8; -14/99 e6; 8/11 n e6; 14/45 e4; -16/3 n e4; 16 n^2 e4; "
                 "-2/9 p; 12 n p; -228 n^2 p; 1728 n^3 p; -3888 n^4 p; 1 N2; -36 n N2; "
                 "360 n^2 N2; -864 n^3 N2"),
    "N10": ("N10", "-227/2145 e10; 13/55 e8; -52/55 n e8; -36/143 e6; 480/143 n e6; "
                   "-1080/143 n^2 e6; 4/11 e4; -112/11 n e4; 840/11 n^2 e4; -1440/11 n^3 e4; "
                   "-8/33 p; 16 n p; -396 n^2 p; 4464 n^3 p; -21600 n^4 p; 31104 n^5 p; "
                   "1 N2; -48 n N2; 756 n^2 N2; -4320 n^3 N2; 6480 n^4 N2"),
    "N12": ("N12", "145181/440895 e12; -2497/3705 e10; 2724/1235 n e10; 143/255 e8; "
                   "-104/17 n e8; 936/85 n^2 e8; -33/91 e6; 108/13 n e6; -648/13 n^2 e6; "
                   "864/13 n^3 e6; 110/273 e4; -1440/91 n e4; 2592/13 n^2 e4; "
                   "-11520/13 n^3 e4; 12960/13 n^4 e4; -10/39 p; 20 n p; -612 n^2 p; "
                   "9216 n^3 p; -69552 n^4 p; 233280 n^5 p; -233280 n^6 p; 1 N2; -60 n N2; "
                   "1296 n^2 N2; -12096 n^3 N2; 45360 n^4 N2; -46656 n^5 N2; "
                   "-2664576/2901509 p23s"),
    "N14": ("N14", "-107637/74290 e14; 1887353/668610 e12; -290362/37145 n e12; "
                   "-2951/1425 e10; 1816/95 n e10; -2724/95 n^2 e10; 24167/24225 e8; "
                   "-156156/8075 n e8; 156156/1615 n^2 e8; -170352/1615 n^3 e8; "
                   "-143/306 e6; 264/17 n e6; -2772/17 n^2 e6; 10080/17 n^3 e6; "
                   "-9072/17 n^4 e6; 13/30 e4; -22 n e4; 396 n^2 e4; -3024 n^3 e4; "
                   "9072 n^4 e4; -36288/5 n^5 e4; -4/15 p; 24 n p; -876 n^2 p; "
                   "16560 n^3 p; -171072 n^4 p; 4644864/5 n^5 p; -2286144 n^6 p; "
                   "1679616 n^7 p; 1 N2; -72 n N2; 1980 n^2 N2; -25920 n^3 N2; "
                   "163296 n^4 N2; -435456 n^5 N2; 326592 n^6 N2; "
                   "-40412736/5133439 p23s; 111912192/5133439 n p23s"),
    # symmetrized moments and spt_k
    "mu4-e4": ("mu4", "1/480 e4; -1/480 p; -1/2 n^2 p"),
    "mu6-e6": ("mu6", "-11/272160 e6; -1/4032 e4; -1/3360 n e4; 157/544320 p; -1/4320 n p; "
                      "1/18 n^2 p; 1/18 n^3 p"),
    "eta4-exp": ("eta4", "1/180 e4; -1/180 p; 1/6 n p; -3/2 n^2 p; -1/2 n N2"),
    "eta6-exp": ("eta6", "-1/15120 e6; -1/1680 e4; -1/420 n e4; 1/1512 p; -1/60 n p; "
                         "1/10 n^2 p; 3/5 n^3 p; 1/20 n N2; 3/20 n^2 N2"),
    "spt2-exp": ("spt2", "-1/288 e4; 1/2 n N2; 1/288 p; -1/6 n p; 1 n^2 p"),
    "spt3-exp": ("spt3", "1/38880 e6; 1/2880 e4; 1/480 n e4; -29/77760 p; 71/4320 n p; "
                         "-2/45 n^2 p; -49/90 n^3 p; -1/20 n N2; -3/20 n^2 N2"),
}

# Displayed variants that disagree with the series; kept so the disagreement is testable.
PUBLISHED_VARIANTS = {
    "N4-short": ("N4", "2/15 e4; -2/15 p; 4 n p; -36 n^2 p; -12 n N2"),
}

FORMULAS: dict[str, Formula] = {
    fid: Formula(fid, target, parse_terms(text)) for fid, (target, text) in _FORMULA_TEXT.items()
}


def formula(fid: str) -> Formula:
    if fid in FORMULAS:
        return FORMULAS[fid]
    if fid in PUBLISHED_VARIANTS:
        target, text = PUBLISHED_VARIANTS[fid]
        return Formula(fid, target, parse_terms(text))
    raise InvalidParameter(f"unknown formula {fid!r}")


def moment_formula_eval(fid: str, n: int, store: SequenceStore | None = None) -> Fraction:
    """Value of a closed formula at n."""
    f = formula(fid)
    store = store or SequenceStore()
    for s in f.sequences():
        store.ensure(s, n + 1)
    return f.evaluate(store, n)


def check_formula(fid: str, nmax: int = 300, store: SequenceStore | None = None) -> dict:
    """Compare a formula with its series-derived target for 0 <= n <= nmax."""
    f = formula(fid)
    store = store or SequenceStore()
    for s in f.sequences() | {f.target}:
        store.ensure(s, nmax + 1)
    bad = []
    for n in range(nmax + 1):
        lhs = store.get(f.target, n)
        rhs = f.evaluate(store, n)
        if lhs != rhs:
            bad.append({"n": n, "series": lhs, "formula": rhs})
            if len(bad) >= 10:
                break
    return {"formula": fid, "target": f.target, "nmax": nmax, "mismatches": bad,
            "status": "pass" if not bad else "fail"}


# ---- quasi-modular forms ------------------------------------------------------------


def quasimodular_monomials(n: int) -> list[tuple[int, int, int]]:
    """(a, b, c) with a + 2b + 3c <= n, graded by weight, then lexicographic."""
    out = [(a, b, c) for c in range(n // 3 + 1) for b in range((n - 3 * c) // 2 + 1)
           for a in range(n - 3 * c - 2 * b + 1)]
    return sorted(out, key=lambda t: (t[0] + 2 * t[1] + 3 * t[2], t))


def quasimodular_dim(n: int) -> int:
    return len(quasimodular_monomials(n))


def _theta_power(s: QSeries, j: int) -> QSeries:
    for _ in range(j):
        s = s.theta()
    return s


def basis_A(n: int, prec: int) -> list[tuple[str, QSeries]]:
    """Theta^j(P E_2k) for k = 0 or 2 <= k <= n and 0 <= j <= n - k, ordered by weight then (j, k)."""
    P = partitions(prec)
    items = []
    for k in [0] + list(range(2, n + 1)):
        base = P if k == 0 else P * eisenstein(2 * k, prec)
        for j in range(n - k + 1):
            items.append((2 * k + 2 * j, j, k, base))
    items.sort(key=lambda t: (t[0], t[1], t[2]))
    out = []
    for _, j, k, base in items:
        name = "P" if k == 0 else f"P*E{2 * k}"
        label = name if j == 0 else (f"Theta({name})" if j == 1 else f"Theta^{j}({name})")
        out.append((label, _theta_power(base, j)))
    return out


def basis_P_Delta(prec: int, thetas: int = 0) -> list[tuple[str, QSeries]]:
    pd = partitions(prec) * delta(prec)
    out = [("P*Delta", pd)]
    for j in range(1, thetas + 1):
        out.append((f"Theta^{j}(P*Delta)" if j > 1 else "Theta(P*Delta)", _theta_power(pd, j)))
    return out


def basis_theta_R2(n: int, prec: int) -> list[tuple[str, QSeries]]:
    r2 = moment_series("rank", 2, prec)
    return [("R2" if i == 0 else (f"Theta({'R2'})" if i == 1 else f"Theta^{i}(R2)"), _theta_power(r2, i))
            for i in range(n)]


def basis_monomials(n: int, prec: int) -> list[tuple[str, QSeries]]:
    """P E2^a E4^b E6^c spanning P * quasi-modular forms of weight <= 2n."""
    P = partitions(prec)
    E = {2: eisenstein(2, prec), 4: eisenstein(4, prec), 6: eisenstein(6, prec)}
    out = []
    for a, b, c in quasimodular_monomials(n):
        s = P
        for w, e in ((2, a), (4, b), (6, c)):
            for _ in range(e):
                s = s * E[w]
        out.append((f"P*E2^{a}*E4^{b}*E6^{c}", s))
    return out


def quasimodular_solve(target: QSeries, basis: list[tuple[str, QSeries]], margin: int = 20) -> dict[str, Fraction]:
    """Exact coefficients c with target = sum c_i basis_i, verified through the common precision."""
    x = fit_linear(target, [b for _, b in basis], margin=margin)
    return {label: c for (label, _), c in zip(basis, x)}


def moment_basis(kind: str, n: int, prec: int) -> list[tuple[str, QSeries]]:
    """Basis in which C_2n (crank) or R_2n (rank) is a combination."""
    basis = basis_A(n, prec)
    if n >= 6:
        basis += basis_P_Delta(prec, thetas=n - 6)
    if kind == "rank":
        basis += basis_theta_R2(n, prec)
    return basis


_LABEL_SEQ = {"P": "p", "P*Delta": "p23s", "R2": "N2"}


def _label_term(label: str) -> tuple[int, str]:
    j, inner = 0, label
    if label.startswith("Theta^"):
        j = int(label[6:label.index("(")])
        inner = label[label.index("(") + 1:-1]
    elif label.startswith("Theta("):
        j, inner = 1, label[6:-1]
    if inner in _LABEL_SEQ:
        return j, _LABEL_SEQ[inner]
    if inner.startswith("P*E"):
        return j, "e" + inner[3:]
    raise InvalidParameter(f"cannot read label {label!r}")


def rediscover_formula(kind: str, two_n: int, prec: int | None = None) -> Formula:
    """Solve C_2n or R_2n in its quasi-modular basis and read the result as a Formula."""
    _check_order(two_n)
    n = two_n // 2
    basis_len = len(moment_basis(kind, n, 8))
    prec = prec or basis_len + 60
    target = moment_series(kind, two_n, prec)
    sol = quasimodular_solve(target, moment_basis(kind, n, prec))
    terms = []
    for label, c in sol.items():
        if c:
            j, seq = _label_term(label)
            terms.append(Term(c, j, seq))
    name = ("M" if kind == "crank" else "N") + str(two_n)
    return Formula(f"{name}-fit", name, tuple(terms))


def same_terms(a: Formula, b: Formula) -> bool:
    def norm(f):
        acc: dict = {}
        for t in f.terms:
            acc[(t.seq, t.npow)] = acc.get((t.seq, t.npow), 0) + t.coeff
        return {k: v for k, v in acc.items() if v}
    return norm(a) == norm(b)


def T_series(k: int, prec: int) -> QSeries:
    """(2k-1)(k-1) R_2k + 6 sum binom(2k,2i)(2^(2i-1)-1) Theta(R_{2k-2i}) + sum (...) R_{2k-2i}."""
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    R = {j: moment_series("rank", 2 * j, prec) for j in range(1, k + 1)}
    out = R[k].scale((2 * k - 1) * (k - 1))
    for i in range(1, k):
        out = out + R[k - i].theta().scale(6 * comb(2 * k, 2 * i) * (2 ** (2 * i - 1) - 1))
        c = comb(2 * k, 2 * i + 2) * (2 ** (2 * i + 1) - 1) - 2 ** (2 * i) * comb(2 * k, 2 * i + 1) \
            + comb(2 * k, 2 * i)
        out = out + R[k - i].scale(c)
    return out


def check_T_belongs(k: int, prec: int | None = None) -> dict[str, Fraction]:
    """T_k as a combination of P E2^a E4^b E6^c with a + 2b + 3c <= k; raises FitFailed otherwise."""
    prec = prec or quasimodular_dim(k) + 60
    return quasimodular_solve(T_series(k, prec), basis_monomials(k, prec))
