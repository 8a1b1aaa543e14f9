"""Smith-Minkowski-Siegel mass of 8-dimensional positive-definite genera.

A mass is carried symbolically as ``coeff * d^(7/2) * zeta_d(4) / pi^4``
with ``coeff`` rational, so the stepwise local computation and the closed
form can be compared by exact rational equality.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import E2Case, factorize, odd_prime_count, valuation, zeta_d
from .errors import DimensionUnsupported, DomainError, UnsupportedConfiguration
from .genus import GenusSymbol
from .interval import IntervalReal, Number, pi_fourth, sqrt_interval
from .padic import (
    PAdicSymbol,
    Species,
    compartments,
    species_bound,
    species_free_compartment,
    species_free_type2,
    species_odd_p,
)

STD_DENOMINATOR = 30240  # std(K) = zeta_D(4) / (30240 pi^4) in dimension 8


@dataclass(frozen=True)
class LocalRatio:
    """The number rational * p^(half_exponent / 2)."""

    p: int
    rational: Fraction
    half_exponent: int

    def rebase(self, half_exponent: int) -> LocalRatio:
        """Same number with the given half-exponent (difference must be even)."""
        diff = self.half_exponent - half_exponent
        if diff % 2:
            raise ArithmeticError("cannot move an odd half-power of p into the rational part")
        return LocalRatio(self.p, self.rational * Fraction(self.p) ** (diff // 2), half_exponent)

    def __mul__(self, other: LocalRatio) -> LocalRatio:
        if other.p != self.p:
            raise DomainError("local ratios at different primes")
        return LocalRatio(self.p, self.rational * other.rational, self.half_exponent + other.half_exponent)


def std_p(p: int) -> Fraction:
    """Standard local mass factor at p | 2d for dimension 8."""
    q = Fraction(1, p)
    return 1 / (2 * (1 - q**2) * (1 - q**4) * (1 - q**6))


def diagonal_factor(s: Species, p: int) -> Fraction:
    q = Fraction(1, p)
    if s.n == 0:
        if s.sign < 0:
            raise UnsupportedConfiguration("species 0- has no implemented diagonal factor")
        return Fraction(1)
    if s.n % 2 == 1:
        half = (s.n - 1) // 2
        prod = Fraction(1)
        for i in range(1, half + 1):
            prod *= 1 - q ** (2 * i)
        return 1 / (2 * prod)
    if s.sign == 0:
        raise DomainError("even species needs a sign")
    half = s.n // 2
    prod = 1 - s.sign * q**half
    for i in range(1, half):
        prod *= 1 - q ** (2 * i)
    return 1 / (2 * prod)


def cross_term(s: PAdicSymbol) -> LocalRatio:
    """prod_{i<j} (q_j / q_i)^(n_i n_j / 2) as a half-integer power of p."""
    cs = s.constituents
    half = sum((cs[j].scale - cs[i].scale) * cs[i].dim * cs[j].dim for i in range(len(cs)) for j in range(i + 1, len(cs)))
    return LocalRatio(s.p, Fraction(1), half)


def local_species(s: PAdicSymbol) -> list[tuple[str, Species]]:
    """(description, species) for every entity carrying a diagonal factor."""
    out = []
    if s.p != 2:
        for c in s.constituents:
            out.append((f"{s.p}^{c.scale}", species_odd_p(c, s.p)))
        return out
    view = compartments(s)
    for c in view.free_type2:
        out.append((f"free 2^{c.scale} II", species_free_type2(c)))
    for c in view.bound_type2 + view.love_forms:
        out.append((f"bound 2^{c.scale} dim {c.dim}", species_bound(c)))
    for comp in view.compartments:
        out.append((f"compartment at 2^{comp.constituents[0].scale}", species_free_compartment(comp)))
    return out


def local_mass(s: PAdicSymbol) -> LocalRatio:
    """m_p: diagonal factors times cross terms, times 2^-n(II) at p = 2.

    Bound love forms enter through their species-1 diagonal factor 1/2.
    """
    rational = Fraction(1)
    for _, sp in local_species(s):
        rational *= diagonal_factor(sp, s.p)
    if s.p == 2:
        n_type2 = sum(c.dim for c in s.constituents if not c.is_odd)
        rational *= Fraction(1, 2**n_type2)
    return LocalRatio(s.p, rational, 0) * cross_term(s)


def local_mass_ratio(s: PAdicSymbol) -> LocalRatio:
    """m_p / std_p for an 8-dimensional symbol."""
    if s.dim != 8:
        raise DimensionUnsupported(f"standard local mass implemented for dimension 8 only, got {s.dim}")
    m = local_mass(s)
    return LocalRatio(s.p, m.rational / std_p(s.p), m.half_exponent)


@dataclass(frozen=True)
class MassValue:
    """coeff * d^(7/2) * zeta_d(4) / pi^4."""

    coeff: Fraction
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff <= 0:
            raise DomainError("mass coefficient must be positive")
        if self.d < 1:
            raise DomainError("mass discriminant must be positive")

    def exact(self) -> Fraction | None:
        """The mass as a rational when d is a perfect square, else None.

        For square d the character is trivial off 2d, so zeta_d(4) / pi^4 is
        (1/90) prod_{p | 2d} (1 - p^-4).
        """
        r = math.isqrt(self.d)
        if r * r != self.d:
            return None
        ratio = Fraction(1, 90)
        for p in factorize(2 * self.d).primes():
            ratio *= 1 - Fraction(1, p**4)
        return self.coeff * Fraction(r) ** 7 * ratio

    def to_dict(self) -> dict:
        return {"coeff_num": self.coeff.numerator, "coeff_den": self.coeff.denominator, "d": self.d}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def mass_stepwise(g: GenusSymbol) -> MassValue:
    """Mass from the local symbols: std(K) * prod_{p | 2d} m_p / std_p."""
    if g.dim != 8:
        raise DimensionUnsupported(f"mass implemented for dimension 8 only, got {g.dim}")
    if g.signature != (8, 0):
        raise DomainError("mass needs a positive-definite genus")
    coeff = Fraction(1, STD_DENOMINATOR)
    for p in sorted({2, *factorize(g.det).primes()}):
        if p not in g.locals:
            raise DomainError(f"genus symbol lacks the place {p}")
        ratio = local_mass_ratio(g.locals[p]).rebase(7 * valuation(g.det, p))
        coeff *= ratio.rational
    return MassValue(coeff, g.det)


BRANCH = {E2Case.E0: Fraction(1, 240), E2Case.E2: Fraction(1, 512), E2Case.E5PLUS: Fraction(1, 1024)}

# For odd k the 2-adic symbol is 1^{-8}_II, whose diagonal factor carries
# (1 + 2^-4) rather than (1 - 2^-4): 16/17 * 2^-8 = 1/272, not 1/240.
CORRECTED_BRANCH = {**BRANCH, E2Case.E0: Fraction(1, 272)}


def closed_form_coeff(d: int, corrected: bool = False) -> Fraction:
    """branch(e_2) / (30240 * 2^(number of odd primes dividing d)).

    The default uses the published branch values; ``corrected=True`` swaps
    in the e_2 = 0 value that agrees with the local computation.
    """
    case = E2Case.of_exponent(valuation(d, 2))
    branch = (CORRECTED_BRANCH if corrected else BRANCH)[case]
    return branch / (STD_DENOMINATOR * 2 ** odd_prime_count(d))


def mass_closed_form(k: int, corrected: bool = False) -> MassValue:
    if k < 3:
        raise DomainError(f"k must be at least 3, got {k}")
    d = k * k - 4
    return MassValue(closed_form_coeff(d, corrected), d)


def numeric_mass(m: MassValue, target_radius: Number | None = None) -> IntervalReal:
    """Certified enclosure of the mass.

    Without ``target_radius`` the enclosure is refined to a relative radius
    of 1e-12.
    """
    if target_radius is not None and Fraction(target_radius) <= 0:
        raise DomainError("target_radius must be positive")
    rel = Fraction(1, 10**6)
    while True:
        d7 = m.d**3 * sqrt_interval(m.d, rel)
        z = zeta_d(m.d, 4, rel)
        pi4 = pi_fourth(rel)
        value = m.coeff * d7 * z / pi4
        goal = Fraction(target_radius) if target_radius is not None else value.lo / 10**12
        if value.radius <= goal:
            return value
        rel /= 1000


def orbit_lower_bound(d: int, order_OK: int) -> Fraction:
    """2^(odd primes of d) / (4 |O(K)|)."""
    if order_OK < 2 or order_OK % 2:
        raise DomainError("an isometry group order is even and at least 2")
    return Fraction(2 ** odd_prime_count(d), 4 * order_OK)
