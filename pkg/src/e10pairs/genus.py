"""Genus symbols, the predicted genera of L and K, and genus existence."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .arith import d_profile, E2Case, factorize, kronecker, valuation
from .errors import DegenerateLattice, DomainError
from .lattice import det_signature
from .padic import (
    Constituent,
    PAdicSymbol,
    jordan_symbol,
    oddity,
    p_excess,
)


@dataclass(frozen=True)
class GenusSymbol:
    dim: int
    signature: tuple[int, int]
    det: int
    locals: Mapping[int, PAdicSymbol] = field(hash=False)

    def __post_init__(self) -> None:
        if self.det == 0:
            raise DomainError("genus symbol needs a nonzero determinant")
        if sum(self.signature) != self.dim:
            raise DomainError("signature does not add up to the dimension")
        object.__setattr__(self, "locals", dict(sorted(self.locals.items())))

    def places(self) -> tuple[int, ...]:
        return tuple(self.locals)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "sig": list(self.signature),
            "det": self.det,
            "locals": [s.to_dict() for s in self.locals.values()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> GenusSymbol:
        try:
            locs = {int(s["p"]): PAdicSymbol.from_dict(s) for s in data["locals"]}
            return cls(int(data["dim"]), tuple(data["sig"]), int(data["det"]), locs)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed genus JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self) -> str:
        locs = "; ".join(f"p={p}: {s}" for p, s in self.locals.items())
        return f"dim {self.dim}, sig {self.signature}, det {self.det}, {locs}"


def relevant_primes(det: int) -> tuple[int, ...]:
    return tuple(sorted({2, *factorize(abs(det)).primes()}))


def genus_of_gram(g: Sequence[Sequence[int]]) -> GenusSymbol:
    det, sig = det_signature(g)
    if det == 0:
        raise DegenerateLattice("genus symbol of a degenerate lattice")
    locs = {p: jordan_symbol(g, p) for p in relevant_primes(det)}
    return GenusSymbol(len(g), sig, det, locs)


# -- the families L(k) and K(k) ---------------------------------------------


def _c(scale: int, dim: int, sign: int, type_: str = "I", sub: int | None = None) -> Constituent:
    return Constituent(scale, dim, sign, type_, sub)


def predicted_K_genus(k: int) -> GenusSymbol:
    """The 8-dimensional positive-definite genus of det k^2-4 that glues to L."""
    prof = d_profile(k)
    d, e2, f2 = prof.d, prof.e(2), prof.f(2)
    s2 = kronecker(f2, 2)
    if prof.e2_case is E2Case.E0:
        two = (_c(0, 8, -1, "II"),)
    elif prof.e2_case is E2Case.E2:
        two = (_c(0, 6, 1, "II"), _c(1, 2, s2, "I", f2 - 1))
    else:
        two = (_c(0, 6, 1, "II"), _c(1, 1, 1, "I", -1), _c(e2 - 1, 1, s2, "I", f2))
    locs = {2: PAdicSymbol(2, two)}
    for p in prof.odd_primes():
        ep, fp = prof.e(p), prof.f(p)
        locs[p] = PAdicSymbol(p, (_c(0, 7, kronecker(2, p)), _c(ep, 1, kronecker(2 * fp, p))))
    return GenusSymbol(8, (8, 0), d, locs)


def predicted_L_symbols(k: int) -> dict[int, PAdicSymbol]:
    """Local symbols of the span of a root pair with inner product k."""
    prof = d_profile(k)
    e2, f2 = prof.e(2), prof.f(2)
    sm = kronecker(-f2, 2)
    if prof.e2_case is E2Case.E0:
        two = (_c(0, 2, -1, "II"),)
    elif prof.e2_case is E2Case.E2:
        two = (_c(1, 2, sm, "I", 1 - f2),)
    else:
        two = (_c(1, 1, 1, "I", 1), _c(e2 - 1, 1, sm, "I", -f2))
    out = {2: PAdicSymbol(2, two)}
    for p in prof.odd_primes():
        ep, fp = prof.e(p), prof.f(p)
        out[p] = PAdicSymbol(p, (_c(0, 1, kronecker(2, p)), _c(ep, 1, kronecker(-2 * fp, p))))
    return out


def K_added_block(p: int) -> PAdicSymbol:
    """Unimodular block B with K_p = B + (L with negated form)_p.

    At p = 2 this is 1^6_II; at odd p its sign is fixed by the determinant
    condition: det K = d and det L^neg = -d, so det B = -1 in square classes.
    """
    if p == 2:
        return PAdicSymbol(2, (_c(0, 6, 1, "II"),))
    return PAdicSymbol(p, (_c(0, 6, kronecker(-1, p)),))


# -- existence ----------------------------------------------------------------


def local_det_matches(det: int, s: PAdicSymbol) -> bool:
    """Does the local symbol have determinant det times a p-adic unit square?"""
    p = s.p
    v = valuation(det, p)
    if s.det_valuation != v:
        return False
    unit = det // p**v
    if p == 2:
        want = 1 if unit % 8 in (1, 7) else -1
    else:
        want = kronecker(unit, p)
    return s.sign_product == want


def oddity_formula_holds(g: GenusSymbol) -> bool:
    total = g.signature[0] - g.signature[1]
    for p, s in g.locals.items():
        if p != 2:
            total += p_excess(s)
    two = g.locals.get(2)
    odd2 = oddity(two) if two is not None else 0
    return (total - odd2) % 8 == 0


def genus_exists(g: GenusSymbol) -> bool:
    """Determinant conditions at every place plus the oddity formula."""
    if (g.det < 0) != (g.signature[1] % 2 == 1):
        return False
    needed = set(relevant_primes(g.det))
    if not needed <= set(g.locals):
        return False
    for p, s in g.locals.items():
        if s.dim != g.dim or not local_det_matches(g.det, s):
            return False
    return oddity_formula_holds(g)
