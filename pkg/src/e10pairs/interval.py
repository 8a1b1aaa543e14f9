"""Closed intervals with exact rational endpoints.

Every operation returns an interval that contains all values of the
operation applied to points of the operands.  Endpoints are
:class:`fractions.Fraction`; :meth:`IntervalReal.widen_to_dyadic` trades a
little width for small denominators when long products are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction]


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class IntervalReal:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> IntervalReal:
        return cls(Fraction(x), Fraction(x))

    @classmethod
    def around(cls, center: Number, radius: Number) -> IntervalReal:
        return cls(Fraction(center) - radius, Fraction(center) + radius)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def radius(self) -> Fraction:
        return self.width / 2

    def contains(self, x: Number | IntervalReal) -> bool:
        if isinstance(x, IntervalReal):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    __contains__ = contains

    def _coerce(self, other: Number | IntervalReal) -> IntervalReal:
        if isinstance(other, IntervalReal):
            return other
        return IntervalReal.point(other)

    def __add__(self, other: Number | IntervalReal) -> IntervalReal:
        o = self._coerce(other)
        return IntervalReal(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> IntervalReal:
        return IntervalReal(-self.hi, -self.lo)

    def __sub__(self, other: Number | IntervalReal) -> IntervalReal:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number | IntervalReal) -> IntervalReal:
        return self._coerce(other) - self

    def __mul__(self, other: Number | IntervalReal) -> IntervalReal:
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return IntervalReal(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> IntervalReal:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return IntervalReal(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: Number | IntervalReal) -> IntervalReal:
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other: Number | IntervalReal) -> IntervalReal:
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int) -> IntervalReal:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        if n == 0:
            return IntervalReal.point(1)
        if n % 2 == 1 or self.lo >= 0:
            return IntervalReal(min(self.lo**n, self.hi**n), max(self.lo**n, self.hi**n))
        if self.hi <= 0:
            return IntervalReal(self.hi**n, self.lo**n)
        return IntervalReal(Fraction(0), max(self.lo**n, self.hi**n))

    def __lt__(self, other: Number | IntervalReal) -> bool:
        """Certainly less: every point of self is below every point of other."""
        return self.hi < self._coerce(other).lo

    def __gt__(self, other: Number | IntervalReal) -> bool:
        return self.lo > self._coerce(other).hi

    def widen_to_dyadic(self, bits: int) -> IntervalReal:
        scale = 1 << bits
        lo = Fraction(_floor_div(self.lo.numerator * scale, self.lo.denominator), scale)
        hi = Fraction(_ceil_div(self.hi.numerator * scale, self.hi.denominator), scale)
        return IntervalReal(lo, hi)

    def to_float(self) -> float:
        return float(self.mid)

    def decimal_bounds(self, digits: int = 15) -> tuple[str, str]:
        """Outward-rounded scientific-notation strings for both endpoints."""
        return (
            fraction_to_decimal(self.lo, digits, ROUND_FLOOR),
            fraction_to_decimal(self.hi, digits, ROUND_CEILING),
        )

    def __repr__(self) -> str:
        lo, hi = self.decimal_bounds(12)
        return f"IntervalReal([{lo}, {hi}])"


def fraction_to_decimal(x: Fraction, digits: int, rounding: str) -> str:
    """Render ``x`` with ``digits`` significant digits using directed rounding."""
    ctx = Context(prec=digits, rounding=rounding)
    value = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    return f"{value:.{digits - 1}E}"


def sqrt_interval(n: Number, radius: Fraction) -> IntervalReal:
    """Enclosure of the square root of a non-negative rational."""
    n = Fraction(n)
    if n < 0:
        raise ValueError("square root of a negative number")
    if radius <= 0:
        raise ValueError("radius must be positive")
    bits = 1
    while Fraction(1, 1 << bits) > radius:
        bits += 1
    scale = 1 << bits
    # floor(sqrt(n) * scale) via integer square root of n * scale^2
    num = n.numerator * scale * scale
    lo_int = math.isqrt(num // n.denominator)
    lo = Fraction(lo_int, scale)
    # lo <= sqrt(floor(n s^2)) / s <= sqrt(n); hi from one ulp above, checked exactly
    hi = Fraction(lo_int + 1, scale)
    while hi * hi < n:
        hi += Fraction(1, scale)
    while lo * lo > n:
        lo -= Fraction(1, scale)
    return IntervalReal(lo, hi)


def _arctan_inv(x: int, bits: int) -> IntervalReal:
    """Enclosure of arctan(1/x) for integer x >= 2 via its alternating series."""
    target = Fraction(1, 1 << bits)
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if term < target:
            # alternating with decreasing terms: the remainder has the sign of
            # this term and is bounded by it
            if k % 2 == 0:
                return IntervalReal(total, total + term)
            return IntervalReal(total - term, total)
        total += term if k % 2 == 0 else -term
        k += 1


def pi_interval(target_radius: Fraction) -> IntervalReal:
    """Enclosure of pi via Machin's formula pi = 16 atan(1/5) - 4 atan(1/239)."""
    target_radius = Fraction(target_radius)
    if target_radius <= 0:
        raise ValueError("target_radius must be positive")
    bits = 8
    while Fraction(1, 1 << bits) * 20 > target_radius:
        bits += 1
    while True:
        enclosure = 16 * _arctan_inv(5, bits) - 4 * _arctan_inv(239, bits)
        if enclosure.radius <= target_radius:
            return enclosure
        bits += 4


def pi_fourth(target_radius: Number) -> IntervalReal:
    """Enclosure of pi**4 with radius at most ``target_radius``."""
    target_radius = Fraction(target_radius)
    if target_radius <= 0:
        raise ValueError("target_radius must be positive")
    # |d(pi^4)| <= 4 * 3.2^3 * |d pi| < 132 |d pi|
    inner = target_radius / 200
    while True:
        result = pi_interval(inner) ** 4
        if result.radius <= target_radius:
            return result
        inner /= 4
