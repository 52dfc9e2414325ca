"""Small exact number-theoretic helpers."""

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from .errors import InvalidParameter


def isprime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), including n even, negative or zero."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = 0
        while n % 2 == 0:
            n //= 2
            v += 1
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    if p < 3 or not isprime(p):
        raise InvalidParameter(f"legendre symbol needs an odd prime, got {p}")
    return kronecker(a, p)


def chi12(n: int) -> int:
    """The character (12/n)."""
    return kronecker(12, n)


def valuation(x, p: int) -> int | float:
    """p-adic valuation of an integer or Fraction; +inf for zero."""
    if not isprime(p):
        raise InvalidParameter(f"valuation needs a prime, got {p}")
    x = Fraction(x)
    if x == 0:
        return float("inf")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def divides_power(x, p: int, e: int) -> bool:
    """True when p**e divides x (x an integer or a Fraction with p-free denominator)."""
    if e <= 0:
        x = Fraction(x)
        return valuation(x, p) >= e
    x = Fraction(x)
    if x.denominator % p == 0:
        return False
    return x.numerator % (p ** e) == 0


def delta(l: int, k: int) -> int:
    """Least non-negative d with 24*d == 1 mod l**k."""
    if l < 5 or not isprime(l):
        raise InvalidParameter(f"delta needs a prime >= 5, got {l}")
    if k < 0:
        raise InvalidParameter("delta needs k >= 0")
    m = l ** k
    if m == 1:
        return 0
    return pow(24, -1, m)


def sigma(k: int, n: int) -> int:
    """sigma_k(n), the sum of d^k over the divisors d of n."""
    if n < 1:
        raise InvalidParameter("sigma needs n >= 1")
    if k < 0:
        raise InvalidParameter("sigma needs k >= 0")
    total = 1
    for p, e in factorint(n).items():
        pk = p ** k
        total *= sum(pk ** i for i in range(e + 1))
    return total


def sigma_table(nmax: int, k: int) -> list[int]:
    """[0, sigma_k(1), ..., sigma_k(nmax)] by a divisor sieve."""
    table = [0] * (nmax + 1)
    for d in range(1, nmax + 1):
        dk = d ** k
        for m in range(d, nmax + 1, d):
            table[m] += dk
    return table


@lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple:
    # B_m from sum_{j<=m} C(m+1, j) B_j = 0, with B_1 = -1/2
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(comb(m + 1, j) * b[j] for j in range(m))
        b.append(-s / (m + 1))
    return tuple(b)


def bernoulli(n: int) -> Fraction:
    if n < 0:
        raise InvalidParameter("bernoulli needs n >= 0")
    return _bernoulli_list(n)[n]


def gamma(k: int, j: int) -> int:
    """Indicator of k == j."""
    return 1 if k == j else 0


def lcm_many(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def degree_d_ell(l: int, r: int) -> int:
    """deg P_{2r,l} = deg Q_{2r,l} in E_2r(l tau)/E_2r(tau) = P(Y_l)/Q(Y_l)."""
    if l not in (5, 7, 13):
        raise InvalidParameter(f"d_l(r) is defined for l in (5, 7, 13), got {l}")
    if r < 0 or r == 1:
        raise InvalidParameter("d_l(r) needs r = 0 or r >= 2")
    if r == 0:
        return 0
    if l == 5:
        return r if r % 2 == 0 else r - 1
    if l == 7:
        return 4 * r // 3 - (1 if r % 3 == 1 else 0)
    base = 2 * r + r // 3
    return base - {1: 2, 3: 1, 4: 1, 5: 1}.get(r % 6, 0)


def dim_modular_forms(k: int) -> int:
    """dim M_k for SL_2(Z), k even and >= 0."""
    if k < 0 or k % 2:
        raise InvalidParameter("weight must be even and >= 0")
    return k // 12 if k % 12 == 2 else k // 12 + 1


def dim_gamma0(l: int, r: int) -> int:
    """dim M_2r(Gamma_0(l)) = d_l(r) + 1."""
    return degree_d_ell(l, r) + 1


# names used in the documentation
padic_valuation = valuation
delta_inverse24 = delta
kronecker_symbol = kronecker
