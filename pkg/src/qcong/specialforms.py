"""q-expansions of eta quotients, Eisenstein series and related forms.

All constructors take ``prec``, the number of coefficients (indices
0 .. prec-1 relative to the series' own offset).
"""

from fractions import Fraction
from functools import lru_cache

from .errors import InvalidParameter
from .numtheory import bernoulli, kronecker, sigma_table
from .qseries import QSeries


def _check_prec(prec: int):
    if not isinstance(prec, int) or prec < 1:
        raise InvalidParameter(f"precision must be a positive integer, got {prec!r}")


@lru_cache(maxsize=8)
def _euler_nums(prec: int) -> tuple:
    nums = [0] * prec
    k = 0
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 >= prec:
            break
        sign = -1 if k % 2 else 1
        nums[g1] += sign
        g2 = k * (3 * k + 1) // 2
        if k and g2 < prec:
            nums[g2] += sign
        k += 1
    return tuple(nums)


def euler(prec: int) -> QSeries:
    """(q;q)_inf from the pentagonal number theorem."""
    _check_prec(prec)
    return QSeries.from_ints(list(_euler_nums(prec)), prec)


def partitions(prec: int) -> QSeries:
    """1/(q;q)_inf = sum p(n) q^n."""
    return _partitions(prec)


@lru_cache(maxsize=4)
def _partitions(prec: int) -> QSeries:
    return euler(prec).invert()


def eta(prec: int, d: int = 1) -> QSeries:
    """eta(d*tau) = q^(d/24) (q^d;q^d)_inf."""
    return eta_quotient({d: 1}, prec)


def eta_quotient(spec: dict[int, int], prec: int) -> QSeries:
    """prod_d eta(d*tau)^e_d; offset24 is sum d*e_d."""
    _check_prec(prec)
    out = QSeries.from_ints([1], prec)
    offset = 0
    for d, e in spec.items():
        if not isinstance(d, int) or d < 1:
            raise InvalidParameter(f"eta quotient level must be a positive integer, got {d}")
        if e == 0:
            continue
        n = -(-prec // d)
        base = euler(n) ** e
        out = out * base.dilate(d).truncate(prec)
        offset += d * e
    return _with_offset(out, offset)


def _with_offset(s: QSeries, offset24: int) -> QSeries:
    return QSeries._raw(s.nums, s.den, s.lo, s.prec, offset24)


def eisenstein(k: int, prec: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for even k >= 2; E_0 = 1."""
    _check_prec(prec)
    if not isinstance(k, int) or k < 0 or k % 2:
        raise InvalidParameter(f"Eisenstein weight must be even and >= 0, got {k}")
    if k == 0:
        return QSeries.from_ints([1], prec)
    c = Fraction(-2 * k) / bernoulli(k)
    sig = sigma_table(prec - 1, k - 1)
    vals = [Fraction(1)] + [c * s for s in sig[1:]]
    if c.denominator == 1:
        ci = c.numerator
        return QSeries.from_ints([1] + [ci * s for s in sig[1:]], prec)
    return QSeries(vals, prec)


def e_series(k: int, prec: int) -> QSeries:
    """E_k/(q;q)_inf, whose coefficients are e_k(n)."""
    if not isinstance(k, int) or k < 4 or k % 2:
        raise InvalidParameter(f"e_k needs even k >= 4, got {k}")
    return eisenstein(k, prec) * partitions(prec)


def e_sequence(two_r: int, count: int) -> list[Fraction]:
    """e_2r(n) for 0 <= n < count; e_0 = p."""
    if not isinstance(two_r, int) or two_r < 0 or two_r % 2:
        raise InvalidParameter(f"e_2r needs an even 2r >= 0, got {two_r}")
    s = partitions(count) if two_r == 0 else eisenstein(two_r, count) * partitions(count)
    return [s.coeff(n) for n in range(count)]


def partition_power(k: int, prec: int) -> QSeries:
    """(q;q)_inf^k = sum p_k(n) q^n; p_{-1} = p."""
    return euler(prec) ** k


def eisenstein_e2_level(l: int, prec: int) -> QSeries:
    """(l E2(l tau) - E2(tau)) / (l - 1), a holomorphic weight 2 form on Gamma0(l)."""
    if l < 2:
        raise InvalidParameter("level must be >= 2")
    e2 = eisenstein(2, prec)
    return (e2.dilate(l).truncate(prec) * l - e2) / (l - 1)


def eisenstein_chi7(prec: int) -> QSeries:
    """1 + 2 sum_n (n/7) q^n/(1-q^n), weight 1 on Gamma1(7) with character (./7)."""
    _check_prec(prec)
    nums = [0] * prec
    nums[0] = 1
    for d in range(1, prec):
        c = 2 * kronecker(d, 7)
        if c:
            for m in range(d, prec, d):
                nums[m] += c
    return QSeries.from_ints(nums, prec)


def delta(prec: int) -> QSeries:
    """Delta = eta^24 = q (q;q)^24, returned with integral exponents."""
    return eta_quotient({1: 24}, prec).normalized()


def level_eisenstein(kind: str, l: int, prec: int) -> QSeries:
    """kind 'E2': (l E2(l tau) - E2(tau))/(l-1); kind 'E1': the weight 1 series for l = 7."""
    if kind == "E2":
        return eisenstein_e2_level(l, prec)
    if kind == "E1":
        if l != 7:
            raise InvalidParameter("the weight 1 series is only defined for l = 7")
        return eisenstein_chi7(prec)
    raise InvalidParameter(f"kind must be 'E1' or 'E2', got {kind!r}")


def tilde_E(weight: int, l: int, prec: int, form: str = "quotient") -> QSeries:
    """E_weight / Q_{weight,l}(Y_l); see towers.tilde_E."""
    from .towers import tilde_E as _tilde_E

    return _tilde_E(weight, l, prec, form)
