"""Truncated Laurent series in q^(1/24) with exact rational coefficients.

A series stores the coefficients of q^(n + offset24/24) for lo <= n < prec as
integer numerators over one positive common denominator.  Every coefficient
below ``prec`` is known exactly; nothing at or beyond ``prec`` is known, and
asking for it raises PrecisionExhausted instead of returning zero.
Multiplication goes through FLINT integer polynomials.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

import flint

from .errors import InvalidOperand, InvalidParameter, NotInvertible, PrecisionExhausted


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _poly(nums: list[int]) -> flint.fmpz_poly:
    return flint.fmpz_poly(nums)


def _unpoly(p: flint.fmpz_poly, n: int) -> list[int]:
    out = [int(c) for c in p.coeffs()[:n]]
    if len(out) < n:
        out.extend([0] * (n - len(out)))
    return out


def _inverse_unit(nums: list[int], n: int) -> list[int]:
    """1/A mod q^n for an integer series with A[0] = +-1 (Newton iteration)."""
    a = _poly(nums[:n])
    b = _poly([nums[0]])
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = a.mul_low(b, k)
        b = b.mul_low(2 - e, k)
    return _unpoly(b, n)


class QSeries:
    __slots__ = ("offset24", "lo", "nums", "den", "prec")

    def __init__(self, coeffs: Iterable = (), prec: int | None = None, *, lo: int = 0,
                 offset24: int = 0):
        values = [Fraction(c) for c in coeffs]
        if prec is None:
            prec = lo + len(values)
        if prec < lo:
            lo = prec
        values = values[: prec - lo]
        values.extend([Fraction(0)] * (prec - lo - len(values)))
        den = 1
        for v in values:
            if v.denominator != 1:
                den = den * v.denominator // gcd(den, v.denominator)
        nums = [v.numerator * (den // v.denominator) for v in values]
        self._set(nums, den, lo, prec, offset24)

    def _set(self, nums, den, lo, prec, offset24):
        self.nums = nums
        self.den = den
        self.lo = lo
        self.prec = prec
        self.offset24 = offset24
        if den != 1:
            g = den
            for x in nums:
                if g == 1:
                    break
                if x:
                    g = gcd(g, x)
            if g != 1:
                self.nums = [x // g for x in nums]
                self.den = den // g

    @classmethod
    def _raw(cls, nums: list[int], den: int, lo: int, prec: int, offset24: int) -> "QSeries":
        obj = cls.__new__(cls)
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        obj._set(nums, den, lo, prec, offset24)
        return obj

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, object], prec: int, offset24: int = 0) -> "QSeries":
        keys = [k for k in coeffs if k < prec]
        lo = min(keys) if keys else prec
        values = [0] * (prec - lo)
        for k in keys:
            values[k - lo] = coeffs[k]
        return cls(values, prec, lo=lo, offset24=offset24)

    @classmethod
    def from_ints(cls, nums: list[int], prec: int | None = None, *, lo: int = 0,
                  offset24: int = 0, den: int = 1) -> "QSeries":
        """Fast constructor from integer numerators starting at index ``lo``."""
        if prec is None:
            prec = lo + len(nums)
        nums = list(nums[: prec - lo])
        nums.extend([0] * (prec - lo - len(nums)))
        return cls._raw(nums, den, lo, prec, offset24)

    @classmethod
    def constant(cls, c, prec: int) -> "QSeries":
        return cls([c], prec)

    # ---- access -------------------------------------------------------------

    def coeff(self, n: int) -> Fraction:
        """Exact coefficient of q^(n + offset24/24)."""
        if n >= self.prec:
            raise PrecisionExhausted(f"coefficient {n} requested, precision is {self.prec}")
        if n < self.lo:
            return Fraction(0)
        return Fraction(self.nums[n - self.lo], self.den)

    __getitem__ = coeff

    def exponent_shift(self) -> int:
        """The integer s with exponent = index + s; only for integral offsets."""
        if self.offset24 % 24:
            raise InvalidOperand(f"series has fractional exponents (offset24={self.offset24})")
        return self.offset24 // 24

    def at(self, e: int) -> Fraction:
        """Coefficient of q^e for a series with integral exponents."""
        return self.coeff(e - self.exponent_shift())

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all known ones vanish."""
        for i, x in enumerate(self.nums):
            if x:
                return self.lo + i
        return None

    def is_integral(self) -> bool:
        return self.den == 1

    def int_list(self, start: int, stop: int) -> list[int]:
        """Integer coefficients for start <= n < stop."""
        if self.den != 1:
            raise InvalidOperand("series has non-integral coefficients")
        if stop > self.prec:
            raise PrecisionExhausted(f"coefficients up to {stop - 1} requested, precision is {self.prec}")
        out = []
        if start < self.lo:
            out = [0] * (min(stop, self.lo) - start)
            start = self.lo
        out.extend(self.nums[start - self.lo: stop - self.lo])
        return out

    def items(self):
        """(index, Fraction) for every nonzero known coefficient."""
        for i, x in enumerate(self.nums):
            if x:
                yield self.lo + i, Fraction(x, self.den)

    def __len__(self):
        return self.prec - self.lo

    # ---- structure ----------------------------------------------------------

    def _aligned(self, other: "QSeries") -> "QSeries":
        """``other`` re-indexed to share self.offset24."""
        diff = other.offset24 - self.offset24
        if diff % 24:
            raise InvalidOperand(
                f"offsets {self.offset24}/24 and {other.offset24}/24 differ by a non-integer")
        s = diff // 24
        if s == 0:
            return other
        return QSeries._raw(other.nums, other.den, other.lo + s, other.prec + s, self.offset24)

    def reoffset(self, offset24: int) -> "QSeries":
        """Same series written with a different offset (must differ by a multiple of 24)."""
        if (self.offset24 - offset24) % 24:
            raise InvalidOperand("offsets differ by a non-integer")
        s = (self.offset24 - offset24) // 24
        return QSeries._raw(self.nums, self.den, self.lo + s, self.prec + s, offset24)

    def normalized(self) -> "QSeries":
        """Same series with 0 <= offset24 < 24."""
        return self.reoffset(self.offset24 % 24)

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision from {self.prec} to {prec}")
        lo = min(self.lo, prec)
        return QSeries._raw(self.nums[: prec - lo], self.den, lo, prec, self.offset24)

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k."""
        return QSeries._raw(self.nums, self.den, self.lo + k, self.prec + k, self.offset24)

    def _trim(self):
        v = self.valuation()
        if v is None:
            return None, []
        return v, self.nums[v - self.lo:]

    # ---- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return self._aligned(other)
        if isinstance(other, (int, Fraction)):
            s = self.exponent_shift()
            c = Fraction(other)
            return QSeries._raw([c.numerator], c.denominator, -s, max(self.prec, 1 - s), self.offset24)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        lo = min(self.lo, o.lo)
        prec = min(self.prec, o.prec)
        lo = min(lo, prec)
        den = self.den * o.den // gcd(self.den, o.den)
        fa, fb = den // self.den, den // o.den
        nums = [0] * (prec - lo)
        for i in range(max(self.lo, lo), min(self.prec, prec)):
            nums[i - lo] = self.nums[i - self.lo] * fa
        for i in range(max(o.lo, lo), min(o.prec, prec)):
            nums[i - lo] += o.nums[i - o.lo] * fb
        return QSeries._raw(nums, den, lo, prec, self.offset24)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-x for x in self.nums], self.den, self.lo, self.prec, self.offset24)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-Fraction(other))
        if isinstance(other, QSeries):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries._raw([x * c.numerator for x in self.nums], self.den * c.denominator,
                            self.lo, self.prec, self.offset24)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        off = self.offset24 + other.offset24
        va, a = self._trim()
        vb, b = other._trim()
        ea = self.prec if va is None else va
        eb = other.prec if vb is None else vb
        prec = min(self.prec + eb, other.prec + ea)
        if va is None or vb is None:
            return QSeries._raw([], 1, prec, prec, off)
        lo = va + vb
        n = prec - lo
        c = _unpoly(_poly(a[:n]).mul_low(_poly(b[:n]), n), n)
        return QSeries._raw(c, self.den * other.den, lo, prec, off)

    __rmul__ = __mul__

    def invert(self) -> "QSeries":
        v, a = self._trim()
        if v is None:
            raise NotInvertible("leading coefficient is zero or unknown")
        n = len(a)
        c = a[0]
        if c in (1, -1):
            inv = _inverse_unit(a, n)
            den = 1
        else:
            # W(x) = A(c x)/c has unit constant term; 1/A(q) = V(q/c)/c with V = 1/W
            w = [a[k] * c ** (k - 1) if k else 1 for k in range(n)]
            w[0] = 1
            v_ = _inverse_unit(w, n)
            den = c ** n
            inv = [v_[k] * c ** (n - 1 - k) for k in range(n)]
            if den < 0:
                den = -den
                inv = [-x for x in inv]
        # 1/(A/d) = d/A
        inv = [x * self.den for x in inv]
        return QSeries._raw(inv, den, -v, -v + n, -self.offset24)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise NotInvertible("division by zero")
            return self.scale(1 / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        v, a = self._trim()
        if v is None:
            if k == 0:
                raise NotInvertible("0**0 of an unknown-leading series")
            if self.prec < 0:
                raise InvalidOperand("power of a zero series with negative precision")
            p = self.prec * k
            return QSeries._raw([], 1, p, p, self.offset24 * k)
        n = len(a)
        if k == 0:
            return QSeries._raw([1] + [0] * (n - 1), 1, 0, n, 0)
        c = _unpoly(_poly(a).pow_trunc(k, n), n)
        return QSeries._raw(c, self.den ** k, v * k, v * k + n, self.offset24 * k)

    # ---- operators ----------------------------------------------------------

    def dilate(self, d: int) -> "QSeries":
        """Substitute q -> q^d."""
        if not isinstance(d, int) or d < 1:
            raise InvalidParameter(f"dilation factor must be a positive integer, got {d}")
        if d == 1:
            return self
        n = len(self.nums)
        nums = [0] * (d * n) if n else []
        nums[::d] = self.nums
        lo = d * self.lo
        prec = d * self.prec
        return QSeries._raw(nums[: prec - lo], self.den, lo, prec, d * self.offset24)

    def atkin_U(self, d: int) -> "QSeries":
        """Keep the exponents divisible by d and divide them by d."""
        if not isinstance(d, int) or d < 1:
            raise InvalidParameter(f"U needs a positive integer, got {d}")
        s = self.exponent_shift()
        e_lo, e_prec = self.lo + s, self.prec + s
        lo = _ceil_div(e_lo, d)
        prec = _ceil_div(e_prec, d)
        start = d * lo - s - self.lo
        nums = self.nums[start::d][: max(prec - lo, 0)]
        return QSeries._raw(nums, self.den, min(lo, prec), prec, 0)

    def theta(self) -> "QSeries":
        """q d/dq."""
        s = self.exponent_shift()
        lo = self.lo + s
        nums = [x * (lo + i) for i, x in enumerate(self.nums)]
        return QSeries._raw(nums, self.den, lo, self.prec + s, 0)

    # ---- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if self.offset24 % 24:
                return False
            other = self._coerce(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        if (self.offset24 - other.offset24) % 24:
            return False
        return (self - other).valuation() is None

    __hash__ = None

    def agrees_with(self, other: "QSeries", upto: int) -> bool:
        """Exact agreement for every index below ``upto`` (in self's indexing)."""
        o = self._aligned(other)
        if upto > min(self.prec, o.prec):
            raise PrecisionExhausted(
                f"comparison through {upto} exceeds common precision {min(self.prec, o.prec)}")
        diff = (self - o).truncate(upto)
        return diff.valuation() is None

    # ---- serialization ------------------------------------------------------

    def to_json_obj(self) -> dict:
        coeffs = []
        for n, c in self.items():
            coeffs.append([n, f"{c.numerator}/{c.denominator}"])
        return {"offset24": self.offset24, "prec": self.prec, "lo": self.lo, "coeffs": coeffs}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "QSeries":
        coeffs = {int(n): Fraction(c) for n, c in obj["coeffs"]}
        s = cls.from_dict(coeffs, int(obj["prec"]), int(obj["offset24"]))
        lo = obj.get("lo")
        if lo is not None and lo < s.lo:
            s = QSeries._raw([0] * (s.lo - lo) + s.nums, s.den, lo, s.prec, s.offset24)
        return s

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        terms = []
        for n, c in self.items():
            e = Fraction(24 * n + self.offset24, 24)
            terms.append(f"{c}*q^{e}")
            if len(terms) == 6:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        e = Fraction(24 * self.prec + self.offset24, 24)
        return f"QSeries({body} + O(q^{e}))"
