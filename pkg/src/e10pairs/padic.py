"""p-adic Jordan decompositions and Conway-Sloane local symbols.

A symbol is a list of Jordan constituents ``q^{eps n}`` with q = p^scale.
At p = 2 each constituent also has a type (I = odd, II = even) and, for
type I, a subscript (its trace mod 8).  2-adic symbols are *not* put into
a canonical form; compare them through :func:`symbol_invariants`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .arith import kronecker
from .errors import DegenerateLattice, DomainError, UnsupportedConfiguration
from .lattice import determinant, gram_matrix


@dataclass(frozen=True)
class Constituent:
    scale: int
    dim: int
    sign: int
    type: str = "I"
    subscript: int | None = None

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise DomainError("constituent sign must be +1 or -1")
        if self.type not in ("I", "II"):
            raise DomainError("constituent type must be 'I' or 'II'")
        if self.dim < 0:
            raise DomainError("constituent dimension must be non-negative")
        if self.subscript is not None:
            object.__setattr__(self, "subscript", self.subscript % 8)

    @property
    def is_odd(self) -> bool:
        return self.type == "I"

    def with_sign(self, sign: int) -> Constituent:
        return replace(self, sign=sign)


@dataclass(frozen=True)
class PAdicSymbol:
    p: int
    constituents: tuple[Constituent, ...]

    def __post_init__(self) -> None:
        cs = tuple(sorted(self.constituents, key=lambda c: c.scale))
        if len({c.scale for c in cs}) != len(cs):
            raise DomainError("constituent scales must be distinct")
        for c in cs:
            if c.dim == 0:
                raise DomainError("stored constituents need positive dimension")
            if self.p == 2:
                if c.type == "II" and (c.dim % 2 or c.subscript is not None):
                    raise DomainError("type II constituents have even dimension and no subscript")
                if c.type == "I" and (c.subscript is None or (c.subscript - c.dim) % 2):
                    raise DomainError("type I subscript must have the parity of the dimension")
        object.__setattr__(self, "constituents", cs)

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.constituents)

    @property
    def det_valuation(self) -> int:
        return sum(c.scale * c.dim for c in self.constituents)

    @property
    def sign_product(self) -> int:
        out = 1
        for c in self.constituents:
            out *= c.sign
        return out

    def at_scale(self, scale: int) -> Constituent | None:
        for c in self.constituents:
            if c.scale == scale:
                return c
        return None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "constituents": [
                {
                    "scale": c.scale,
                    "dim": c.dim,
                    "sign": "+" if c.sign > 0 else "-",
                    "type": c.type,
                    "subscript": c.subscript,
                }
                for c in self.constituents
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> PAdicSymbol:
        try:
            cs = tuple(
                Constituent(
                    int(c["scale"]),
                    int(c["dim"]),
                    1 if c["sign"] == "+" else -1,
                    c.get("type", "I"),
                    c.get("subscript"),
                )
                for c in data["constituents"]
            )
            return cls(int(data["p"]), cs)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed symbol JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self) -> str:
        parts = []
        for c in self.constituents:
            q = str(self.p**c.scale) if c.scale < 4 else f"({self.p}^{c.scale})"
            sign = "+" if c.sign > 0 else "-"
            s = f"{q}^{{{sign}{c.dim}}}"
            if self.p == 2:
                s += "_II" if c.type == "II" else f"_{c.subscript}"
            parts.append(s)
        return " ".join(parts) if parts else "(empty)"


def symbol(p: int, *constituents: tuple) -> PAdicSymbol:
    """Shorthand: ``symbol(2, (0, 6, 1, "II"), (1, 2, -1, "I", 2))``."""
    return PAdicSymbol(p, tuple(Constituent(*c) for c in constituents))


# -- Jordan decomposition -----------------------------------------------------


def _val(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _unit_residue(x: Fraction, p: int, modulus: int) -> int:
    """x / p^v(x) reduced modulo ``modulus`` (a power of p)."""
    v = _val(x, p)
    u = x / Fraction(p) ** v
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def _legendre_unit(x: Fraction, p: int) -> int:
    return kronecker(_unit_residue(x, p, p), p)


def _split_off(a: list[list[Fraction]], idx: Sequence[int]) -> list[list[Fraction]]:
    """Orthogonal complement of the block on ``idx`` inside a."""
    rest = [i for i in range(len(a)) if i not in idx]
    if len(idx) == 1:
        (t,) = idx
        piv = a[t][t]
        return [[a[i][j] - a[i][t] * a[t][j] / piv for j in rest] for i in rest]
    i0, j0 = idx
    b11, b12, b22 = a[i0][i0], a[i0][j0], a[j0][j0]
    det = b11 * b22 - b12 * b12
    inv = ((b22 / det, -b12 / det), (-b12 / det, b11 / det))
    out = []
    for i in rest:
        ci = (a[i][i0], a[i][j0])
        row = []
        for j in rest:
            cj = (a[j][i0], a[j][j0])
            corr = sum(ci[s] * inv[s][t] * cj[t] for s in range(2) for t in range(2))
            row.append(a[i][j] - corr)
        out.append(row)
    return out


def _blocks(g: Sequence[Sequence[int]], p: int) -> list[tuple[int, list[list[Fraction]]]]:
    """Split g into p-adic blocks: (scale, unit matrix) with 1x1 or 2x2 units."""
    a = [[Fraction(x) for x in row] for row in g]
    blocks = []
    while a:
        entries = [(i, j) for i in range(len(a)) for j in range(i, len(a)) if a[i][j] != 0]
        if not entries:
            raise DegenerateLattice("degenerate Gram matrix")
        v = min(_val(a[i][j], p) for i, j in entries)
        diag = [i for i in range(len(a)) if a[i][i] != 0 and _val(a[i][i], p) == v]
        scale = Fraction(p) ** v
        if diag:
            t = diag[0]
            blocks.append((v, [[a[t][t] / scale]]))
            a = _split_off(a, (t,))
            continue
        i, j = next((i, j) for i, j in entries if i != j and _val(a[i][j], p) == v)
        if p != 2:
            # e_i <- e_i + e_j makes the diagonal entry a unit at scale v
            for r in range(len(a)):
                a[i][r] += a[j][r]
            for r in range(len(a)):
                a[r][i] += a[r][j]
            blocks.append((v, [[a[i][i] / scale]]))
            a = _split_off(a, (i,))
            continue
        blocks.append((v, [[a[i][i] / scale, a[i][j] / scale], [a[j][i] / scale, a[j][j] / scale]]))
        a = _split_off(a, (i, j))
    return blocks


def _is_unit2(x: Fraction) -> bool:
    return x.numerator % 2 == 1


def _diagonalize_odd_unimodular(m: list[list[Fraction]]) -> list[Fraction]:
    """Diagonal units of a 2-adically unimodular form that has an odd vector."""
    diag: list[Fraction] = []
    a = [row[:] for row in m]
    while a:
        odd = next((i for i in range(len(a)) if _is_unit2(a[i][i])), None)
        if odd is not None:
            diag.append(a[odd][odd])
            a = _split_off(a, (odd,))
            continue
        if not diag:
            raise ValueError("form has no odd vector")
        # remainder is even: merge back the last odd unit and pick a new odd
        # vector e0 + sum c_i e_i whose complement is odd
        u = diag.pop()
        n = len(a)
        merged = [[u] + [Fraction(0)] * n] + [[Fraction(0)] + row[:] for row in a]
        for coeffs in itertools.product((0, 1), repeat=n):
            x = [1, *coeffs]
            basis = [x] + [[int(r == c) for r in range(n + 1)] for c in range(1, n + 1)]
            new = [
                [sum(bi[r] * merged[r][s] * bj[s] for r in range(n + 1) for s in range(n + 1)) for bj in basis]
                for bi in basis
            ]
            rest = _split_off(new, (0,))
            if any(_is_unit2(rest[i][i]) for i in range(len(rest))):
                diag.append(new[0][0])
                a = rest
                break
        else:  # pragma: no cover - every odd unimodular Z_2-form is diagonalizable
            raise ArithmeticError("failed to diagonalize an odd unimodular 2-adic form")
    return diag


def jordan_symbol(g: Sequence[Sequence[int]], p: int) -> PAdicSymbol:
    """The p-adic symbol of the lattice with Gram matrix g."""
    g = gram_matrix(g)
    if determinant(g) == 0:
        raise DegenerateLattice("degenerate Gram matrix")
    by_scale: dict[int, list[list[list[Fraction]]]] = {}
    for scale, unit in _blocks(g, p):
        by_scale.setdefault(scale, []).append(unit)
    constituents = []
    for scale in sorted(by_scale):
        units = by_scale[scale]
        dim = sum(len(u) for u in units)
        det = Fraction(1)
        for u in units:
            det *= u[0][0] if len(u) == 1 else u[0][0] * u[1][1] - u[0][1] * u[1][0]
        if p != 2:
            constituents.append(Constituent(scale, dim, _legendre_unit(det, p)))
            continue
        sign = 1 if _unit_residue(det, 2, 8) in (1, 7) else -1
        if all(len(u) == 2 for u in units):
            constituents.append(Constituent(scale, dim, sign, "II"))
            continue
        full = [[Fraction(0)] * dim for _ in range(dim)]
        pos = 0
        for u in units:
            for i in range(len(u)):
                for j in range(len(u)):
                    full[pos + i][pos + j] = u[i][j]
            pos += len(u)
        trace = sum(_unit_residue(x, 2, 8) for x in _diagonalize_odd_unimodular(full))
        constituents.append(Constituent(scale, dim, sign, "I", trace))
    return PAdicSymbol(p, tuple(constituents))


# -- invariants -------------------------------------------------------------


def _antisquare(c: Constituent) -> bool:
    return c.scale % 2 == 1 and c.sign == -1


def p_excess(s: PAdicSymbol) -> int:
    if s.p == 2 or s.p < 2:
        raise DomainError("p-excess is defined for odd primes")
    return sum(c.dim * (s.p**c.scale - 1) + 4 * _antisquare(c) for c in s.constituents) % 8


def oddity(s: PAdicSymbol) -> int:
    if s.p != 2:
        raise DomainError("oddity is defined at p = 2")
    return sum((c.subscript or 0) + 4 * _antisquare(c) for c in s.constituents) % 8


def det_unit_class(s: PAdicSymbol) -> int:
    """+1/-1: the square class of the unit part of the determinant."""
    return s.sign_product


def symbol_invariants(s: PAdicSymbol) -> tuple:
    """Quantities independent of the choice of Jordan decomposition."""
    if s.p != 2:
        return (s.p, tuple((c.scale, c.dim, c.sign) for c in s.constituents))
    return (
        2,
        tuple((c.scale, c.dim, c.type) for c in s.constituents),
        s.sign_product,
        oddity(s),
    )


def direct_sum_symbols(a: PAdicSymbol, b: PAdicSymbol) -> PAdicSymbol:
    if a.p != b.p:
        raise DomainError("symbols at different primes")
    merged: dict[int, Constituent] = {c.scale: c for c in a.constituents}
    for c in b.constituents:
        old = merged.get(c.scale)
        if old is None:
            merged[c.scale] = c
            continue
        odd = old.is_odd or c.is_odd
        sub = ((old.subscript or 0) + (c.subscript or 0)) if (a.p == 2 and odd) else None
        merged[c.scale] = Constituent(c.scale, old.dim + c.dim, old.sign * c.sign, "I" if odd else "II", sub)
    if a.p != 2:
        merged = {k: replace(v, type="I", subscript=None) for k, v in merged.items()}
    return PAdicSymbol(a.p, tuple(merged.values()))


def negate_symbol(s: PAdicSymbol, gram: Sequence[Sequence[int]] | None = None) -> PAdicSymbol:
    """Symbol of the lattice with all inner products negated.

    With a Gram source the symbol is recomputed; otherwise subscripts are
    negated (p = 2) or signs multiplied by (-1|p)^dim (odd p).
    """
    if gram is not None:
        return jordan_symbol([[-x for x in row] for row in gram], s.p)
    if s.p == 2:
        return PAdicSymbol(
            2,
            tuple(replace(c, subscript=None if c.subscript is None else -c.subscript) for c in s.constituents),
        )
    eps = kronecker(-1, s.p)
    return PAdicSymbol(s.p, tuple(c.with_sign(c.sign * eps**c.dim) for c in s.constituents))


# -- compartments, octane, species ----------------------------------------------


@dataclass(frozen=True)
class Compartment:
    constituents: tuple[Constituent, ...]

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.constituents)

    @property
    def octane(self) -> int:
        return octane(self)


@dataclass(frozen=True)
class CompartmentView:
    free_type2: tuple[Constituent, ...]
    bound_type2: tuple[Constituent, ...]
    love_forms: tuple[Constituent, ...]
    compartments: tuple[Compartment, ...]


def compartments(s: PAdicSymbol) -> CompartmentView:
    if s.p != 2:
        raise DomainError("compartments are defined at p = 2")
    odd_scales = {c.scale for c in s.constituents if c.is_odd}
    occupied = {c.scale for c in s.constituents}
    free, bound = [], []
    for c in s.constituents:
        if c.is_odd:
            continue
        (bound if {c.scale - 1, c.scale + 1} & odd_scales else free).append(c)
    love_scales = sorted({t + dx for t in odd_scales for dx in (-1, 1)} - occupied)
    loves = tuple(Constituent(t, 0, 1, "II") for t in love_scales)
    runs: list[list[Constituent]] = []
    for c in s.constituents:
        if not c.is_odd:
            continue
        if runs and runs[-1][-1].scale == c.scale - 1:
            runs[-1].append(c)
        else:
            runs.append([c])
    return CompartmentView(tuple(free), tuple(bound), loves, tuple(Compartment(tuple(r)) for r in runs))


def octane(comp: Compartment) -> int:
    return sum((c.subscript or 0) + (4 if c.sign < 0 else 0) for c in comp.constituents) % 8


@dataclass(frozen=True)
class Species:
    """Species n (sign 0) or n+ / n- (sign +1 / -1, n even)."""

    n: int
    sign: int = 0

    def __str__(self) -> str:
        return f"{self.n}" + {0: "", 1: "+", -1: "-"}[self.sign]


def species_free_type2(c: Constituent) -> Species:
    return Species(c.dim, c.sign if c.dim else 1)


def species_bound(c: Constituent) -> Species:
    if c.is_odd:
        raise UnsupportedConfiguration(f"bound type I constituent at scale 2^{c.scale}")
    return Species(c.dim + 1)


def species_free_compartment(comp: Compartment) -> Species:
    if len(comp.constituents) != 1:
        scales = ", ".join(f"2^{c.scale}" for c in comp.constituents)
        raise UnsupportedConfiguration(f"adjacent type I constituents at scales {scales}")
    n, o = comp.dim, comp.octane
    if n % 2 == 1:
        return Species(n - 1, 1 if o in (1, 7) else -1)
    if o in (2, 6):
        return Species(n - 1)
    return Species(n - 2, 1 if o == 0 else -1)


def species_odd_p(c: Constituent, p: int) -> Species:
    if c.dim % 2 == 0:
        raise UnsupportedConfiguration(f"even-dimensional constituent {p}^{c.scale} at odd p={p}")
    return Species(c.dim)
