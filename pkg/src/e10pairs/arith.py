"""Exact integer primitives: factorization, Kronecker symbols, and the
certified evaluation of the L-series zeta_d(s) used by the mass formula."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .interval import IntervalReal, Number

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factorize(n: int) -> Factorization:
    if n < 1:
        raise DomainError(f"factorize needs a positive integer, got {n}")
    factors = []
    m = n
    p = 2
    while m > 1 and p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        if m > 1 and is_prime(m):
            break
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def odd_prime_count(d: int) -> int:
    """Number of distinct odd primes dividing d."""
    return sum(1 for p, _ in factorize(abs(d)).factors if p != 2)


def kronecker(a: int, n: int) -> int:
    """The Kronecker symbol (a|n), multiplicative in both arguments."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out powers of 2 from n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a|n) for odd n > 0
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


class E2Case(enum.Enum):
    E0 = "E0"
    E2 = "E2"
    E5PLUS = "E5PLUS"

    @classmethod
    def of_exponent(cls, e2: int) -> E2Case:
        if e2 == 0:
            return cls.E0
        if e2 == 2:
            return cls.E2
        if e2 >= 5:
            return cls.E5PLUS
        raise DomainError(f"2-adic valuation {e2} of k^2-4 is impossible")


@dataclass(frozen=True)
class DProfile:
    k: int
    d: int
    factorization: Factorization
    e2_case: E2Case

    def e(self, p: int) -> int:
        return self.factorization.exponent(p)

    def f(self, p: int) -> int:
        return self.d // p ** self.e(p)

    def odd_primes(self) -> tuple[int, ...]:
        return tuple(p for p in self.factorization.primes() if p != 2)


def d_profile(k: int) -> DProfile:
    """d = k^2 - 4 with its factorization and the case of the 2-adic valuation."""
    if k < 3:
        raise DomainError(f"k must be at least 3 for an indefinite span, got {k}")
    d = k * k - 4
    fac = factorize(d)
    return DProfile(k, d, fac, E2Case.of_exponent(fac.exponent(2)))


def _tail_cutoff(s: int, radius: Fraction) -> int:
    # sum_{m > M} m^-s < M^(1-s) / (s-1)
    m = 1
    while Fraction(1, (s - 1) * m ** (s - 1)) > radius:
        m *= 2
    lo, hi = m // 2, m
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if Fraction(1, (s - 1) * mid ** (s - 1)) > radius:
            lo = mid
        else:
            hi = mid
    return max(hi, 1)


def zeta_d(d: int, s: int = 4, target_radius: Number = Fraction(1, 10**9)) -> IntervalReal:
    """Enclosure of sum_{m >= 1, (m, 2d) = 1} (d|m) m^-s.

    Terms are accumulated on a dyadic grid with directed rounding, and the
    tail beyond the cutoff is bounded by the integral of x^-s.
    """
    target_radius = Fraction(target_radius)
    if d < 1:
        raise DomainError("zeta_d needs a positive discriminant")
    if s < 2:
        raise DomainError("zeta_d needs s >= 2")
    if target_radius <= 0:
        raise DomainError("target_radius must be positive")
    cutoff = _tail_cutoff(s, target_radius / 2)
    bits = 8
    while Fraction(cutoff, 1 << bits) > target_radius / 2:
        bits += 1
    scale = 1 << bits
    lo = hi = 0
    for m in range(1, cutoff + 1, 2):
        chi = kronecker(d, m)
        if chi == 0:
            continue
        denom = m**s
        down, up = scale // denom, -((-scale) // denom)
        if chi == 1:
            lo += down
            hi += up
        else:
            lo -= up
            hi -= down
    tail = Fraction(1, (s - 1) * cutoff ** (s - 1))
    return IntervalReal(Fraction(lo, scale) - tail, Fraction(hi, scale) + tail)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def zeta_d_euler(d: int, s: int = 4, prime_bound: int = 2000) -> IntervalReal:
    """Independent enclosure of zeta_d(s) from a truncated Euler product.

    The omitted factors prod_{p > P} (1 - chi(p) p^-s)^-1 have logarithm of
    absolute value at most 2 * sum_{n > P} n^-s < 2 P^(1-s) / (s-1).
    """
    product = Fraction(1)
    for p in primes_up_to(prime_bound):
        if (2 * d) % p == 0:
            continue
        product /= 1 - Fraction(kronecker(d, p), p**s)
    eps = Fraction(2, (s - 1) * prime_bound ** (s - 1))
    # exp(-eps) >= 1 - eps and exp(eps) <= 1 + 2 eps for eps <= 1
    return IntervalReal(product * (1 - eps), product * (1 + 2 * eps))
