"""The E10 root lattice, its real roots, Weyl words, root pairs and the N(k) bound.

Vectors are integer coordinate tuples in the simple-root basis.  The Dynkin
diagram is a chain of nodes 0..8 with node 9 attached to node 2.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError
from .interval import IntervalReal, pi_fourth, sqrt_interval
from .lattice import (
    Embedding,
    Matrix,
    complement_basis,
    inverse,
    matvec,
    orthogonal_complement,
    saturate,
)

RANK = 10
EDGES = tuple((i, i + 1) for i in range(8)) + ((2, 9),)
W_E8_ORDER = 696729600
E8_DEGREES = (2, 8, 12, 14, 18, 20, 24, 30)

Vector = tuple[int, ...]
Word = tuple[int, ...]


def dynkin_gram(n: int, edges: Iterable[tuple[int, int]]) -> Matrix:
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return tuple(tuple(r) for r in g)


@lru_cache(maxsize=None)
def e10_gram() -> Matrix:
    return dynkin_gram(RANK, EDGES)


def e8_gram() -> Matrix:
    """E8 as the subdiagram on nodes 0..6 and 9 of the E10 diagram."""
    nodes = (0, 1, 2, 3, 4, 5, 6, 9)
    g = e10_gram()
    return tuple(tuple(g[i][j] for j in nodes) for i in nodes)


def _check(v: Sequence[int]) -> Vector:
    if len(v) != RANK:
        raise DomainError(f"E10 vectors have {RANK} coordinates, got {len(v)}")
    return tuple(int(x) for x in v)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    g = e10_gram()
    return sum(u[i] * g[i][j] * v[j] for i in range(RANK) for j in range(RANK) if g[i][j] and u[i] and v[j])


def simple_pairings(v: Sequence[int]) -> Vector:
    """(v, alpha_i) for i = 0..9."""
    return tuple(matvec(e10_gram(), v))


def norm(v: Sequence[int]) -> int:
    return pairing(v, v)


def height(v: Sequence[int]) -> int:
    return sum(v)


def is_root(v: Sequence[int]) -> bool:
    return norm(_check(v)) == 2


def is_positive(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v) and any(v)


def is_negative(v: Sequence[int]) -> bool:
    return is_positive([-x for x in v])


def simple_root(i: int) -> Vector:
    if not 0 <= i < RANK:
        raise DomainError(f"no simple root {i}")
    return tuple(int(i == j) for j in range(RANK))


def reflect(r: Sequence[int], x: Sequence[int]) -> Vector:
    """x - (x, r) r for a root r."""
    r, x = _check(r), _check(x)
    if norm(r) != 2:
        raise DomainError("reflect needs a root")
    c = pairing(x, r)
    return tuple(a - c * b for a, b in zip(x, r))


def simple_reflect(i: int, x: Sequence[int]) -> Vector:
    c = simple_pairings(x)[i]
    out = list(x)
    out[i] -= c
    return tuple(out)


def apply_word(word: Sequence[int], x: Sequence[int]) -> Vector:
    """Apply s_{word[0]} first, then s_{word[1]}, and so on."""
    x = _check(x)
    for i in word:
        if not 0 <= i < RANK:
            raise DomainError(f"invalid simple reflection index {i}")
        x = simple_reflect(i, x)
    return x


# -- roots ------------------------------------------------------------------


def _root_order(v: Vector) -> tuple:
    h = height(v)
    return (abs(h), h < 0, tuple(-x for x in v) if h > 0 else v)


def enumerate_roots(H: int) -> list[Vector]:
    """Roots of |height| <= H reached from the simple roots by simple reflections.

    Only positive roots are explored; the negatives are added at the end.
    Every root is a Weyl image of a simple root and a positive root of
    height > 1 is lowered by some simple reflection, so this reaches all of
    them within the height bound.
    """
    if H < 1:
        raise DomainError("height bound must be positive")
    seen = {simple_root(i) for i in range(RANK)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            c = simple_pairings(v)
            for i in range(RANK):
                if c[i] < 0 and height(v) - c[i] <= H:
                    w = list(v)
                    w[i] -= c[i]
                    w = tuple(w)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
    out = seen | {tuple(-x for x in v) for v in seen}
    return sorted(out, key=_root_order)


def roots_by_exhaustion(H: int) -> list[Vector]:
    """Norm-2 vectors with all coordinates of one sign and |height| <= H."""
    out = []
    for h in range(1, H + 1):
        for cut in itertools.combinations(range(h + RANK - 1), RANK - 1):
            parts = [b - a - 1 for a, b in zip((-1,) + cut, cut + (h + RANK - 1,))]
            if norm(parts) == 2:
                out.append(tuple(parts))
                out.append(tuple(-x for x in parts))
    return sorted(out, key=_root_order)


# -- pairs ------------------------------------------------------------------


def is_prenilpotent(r: Sequence[int], r2: Sequence[int]) -> bool:
    if not (is_root(r) and is_root(r2)):
        raise DomainError("prenilpotency is defined for pairs of roots")
    return pairing(r, r2) >= -1


@lru_cache(maxsize=None)
def weyl_vector() -> Vector:
    """rho with (rho, alpha_i) = 1 for every i; integral since E10 is unimodular."""
    rho = matvec(inverse(e10_gram()), [1] * RANK)
    if any(x.denominator != 1 for x in rho):
        raise ArithmeticError("E10 Gram matrix is not unimodular")
    return tuple(int(x) for x in rho)


def _both(pair: tuple[Vector, Vector], sign: int) -> bool:
    test = is_positive if sign > 0 else is_negative
    return test(pair[0]) and test(pair[1])


def _chamber_vector(r: Vector, r2: Vector, bound: int = 64) -> Vector | None:
    """A future timelike x in span(rho, r, r2) with (x, r) > 0 and (x, r2) > 0."""
    rho = weyl_vector()
    rr = norm(rho)
    h, h2, k = height(r), height(r2), pairing(r, r2)
    for b in range(1, bound + 1):
        for n, m, m2 in itertools.product(range(b + 1), range(-b, b + 1), range(-b, b + 1)):
            if max(n, abs(m), abs(m2)) != b:
                continue
            if n * h + 2 * m + k * m2 <= 0 or n * h2 + k * m + 2 * m2 <= 0:
                continue
            xx = n * n * rr + 2 * m * m + 2 * m2 * m2 + 2 * n * m * h + 2 * n * m2 * h2 + 2 * m * m2 * k
            if xx >= 0 or n * rr + m * h + m2 * h2 >= 0:
                continue
            return tuple(n * a + m * c + m2 * e for a, c, e in zip(rho, r, r2))
    return None


def _tits_word(r: Vector, r2: Vector, max_len: int) -> Word | None:
    x = _chamber_vector(r, r2)
    if x is None:
        return None
    word: list[int] = []
    pair = (r, r2)
    while not _both(pair, 1):
        if len(word) >= max_len:
            return None
        c = simple_pairings(x)
        i = next((i for i in range(RANK) if c[i] < 0), None)
        if i is None:  # x dominant, so both images are already positive
            raise ArithmeticError("reduction stopped before positivity")
        x = simple_reflect(i, x)
        pair = (simple_reflect(i, pair[0]), simple_reflect(i, pair[1]))
        word.append(i)
    return tuple(word)


def _bfs_word(r: Vector, r2: Vector, sign: int, max_len: int, max_states: int) -> Word | None:
    start = (r, r2)
    if _both(start, sign):
        return ()
    parent: dict[tuple[Vector, Vector], tuple[tuple[Vector, Vector], int] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        state, depth = queue.popleft()
        if depth == max_len:
            continue
        for i in range(RANK):
            nxt = (simple_reflect(i, state[0]), simple_reflect(i, state[1]))
            if nxt in parent:
                continue
            parent[nxt] = (state, i)
            if _both(nxt, sign):
                word = []
                cur = nxt
                while parent[cur] is not None:
                    cur, j = parent[cur]
                    word.append(j)
                return tuple(reversed(word))
            if len(parent) >= max_states:
                return None
            queue.append((nxt, depth + 1))
    return None


def positivity_search(
    r: Sequence[int],
    r2: Sequence[int],
    sign: int = 1,
    max_len: int = 30,
    method: str = "tits",
    max_states: int = 200_000,
) -> Word | None:
    """A Weyl word making both roots positive (sign +1) or negative (sign -1).

    ``method="bfs"`` is a breadth-first search over pair states, memoized and
    capped at ``max_states``.  ``method="tits"`` picks a chamber on the
    positive side of both root hyperplanes and walks it to the fundamental
    chamber.  ``None`` means nothing was found within the bounds.
    """
    r, r2 = _check(r), _check(r2)
    if not (is_root(r) and is_root(r2)):
        raise DomainError("positivity_search needs two roots")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if max_len < 0:
        raise DomainError("max_len must be non-negative")
    if method not in ("tits", "bfs"):
        raise DomainError(f"unknown search method {method!r}")
    if _both((r, r2), sign):
        return ()
    if all(a == -b for a, b in zip(r, r2)):
        return None  # the images stay opposite
    if method == "bfs":
        return _bfs_word(r, r2, sign, max_len, max_states)
    if sign < 0:
        r, r2 = tuple(-x for x in r), tuple(-x for x in r2)
    return _tits_word(r, r2, max_len)


@dataclass(frozen=True)
class PairRecord:
    r: Vector
    r2: Vector
    k: int

    def __post_init__(self) -> None:
        if not (is_root(self.r) and is_root(self.r2)):
            raise DomainError("pair entries must be roots")
        if pairing(self.r, self.r2) != self.k:
            raise DomainError("recorded inner product is wrong")

    def span_gram(self) -> Matrix:
        return ((2, self.k), (self.k, 2))

    def embedding(self) -> Embedding:
        return Embedding(e10_gram(), (self.r, self.r2))

    def to_dict(self) -> dict:
        return {"r": list(self.r), "r2": list(self.r2), "k": self.k, "span_gram": [list(x) for x in self.span_gram()]}


def find_pairs(k: int, H: int, limit: int | None = None, saturated: bool = False) -> list[PairRecord]:
    """Pairs (simple root, root of |height| <= H) with inner product k.

    The Weyl group is transitive on roots, so every pair is equivalent to one
    whose first entry is simple.  With ``saturated=True`` only pairs whose
    integer span is primitive in E10 are kept.
    """
    roots = enumerate_roots(H)
    out = []
    for i in range(RANK):
        r = simple_root(i)
        for r2 in roots:
            if simple_pairings(r2)[i] != k:
                continue
            rec = PairRecord(r, r2, k)
            if saturated and k * k != 4 and not rec.embedding().is_saturated():
                continue
            out.append(rec)
            if limit is not None and len(out) >= limit:
                return out
    return out


def find_pair(k: int, H: int, saturated: bool = False) -> PairRecord | None:
    found = find_pairs(k, H, limit=1, saturated=saturated)
    return found[0] if found else None


E8_NODES = (0, 1, 2, 3, 4, 5, 6, 9)


@lru_cache(maxsize=None)
def hyperbolic_plane() -> tuple[Vector, Vector]:
    """Null vectors e, f with (e, f) = 1 spanning the complement of the E8 nodes."""
    e8 = Embedding(e10_gram(), tuple(simple_root(i) for i in E8_NODES))
    u1, u2 = complement_basis(e8)
    combos = sorted(itertools.product(range(-3, 4), repeat=2), key=lambda t: (abs(t[0]) + abs(t[1]), t))
    nulls = [
        tuple(a * x + b * y for x, y in zip(u1, u2))
        for a, b in combos
        if (a, b) != (0, 0) and norm([a * x + b * y for x, y in zip(u1, u2)]) == 0
    ]
    for e in nulls:
        for f in nulls:
            if pairing(e, f) == 1:
                return e, f
    raise ArithmeticError("no hyperbolic pair found")


def _e8_roots_orthogonal_to(i: int) -> list[Vector]:
    # the highest E8 root has height 29
    outside = [j for j in range(RANK) if j not in E8_NODES]
    return [
        v
        for v in enumerate_roots(29)
        if all(v[j] == 0 for j in outside) and pairing(v, simple_root(i)) == 0
    ]


def construct_pairs(k: int, count: int = 3, saturated: bool = True) -> list[PairRecord]:
    """Explicit pairs (alpha_0, beta + z) with inner product k.

    beta = k omega + gamma lies in the E8 sublattice, where omega is the E8
    fundamental weight dual to alpha_0 and gamma is zero or an E8 root
    orthogonal to alpha_0; z = t e + s f in the hyperbolic plane has
    z^2 = 2 - beta^2.
    """
    if count < 1:
        raise DomainError("count must be positive")
    r = simple_root(0)
    g8 = tuple(tuple(e10_gram()[a][b] for b in E8_NODES) for a in E8_NODES)
    w8 = [x for x in matvec(inverse(g8), [1] + [0] * 7)]
    omega = [0] * RANK
    for a, c in zip(E8_NODES, w8):
        omega[a] = int(c)
    e, f = hyperbolic_plane()
    out: list[PairRecord] = []
    seen: set[Vector] = set()
    for gamma in [(0,) * RANK] + _e8_roots_orthogonal_to(0):
        beta = tuple(k * a + b for a, b in zip(omega, gamma))
        ts = 1 - norm(beta) // 2
        divisors = [t for t in range(1, abs(ts) + 1) if ts % t == 0] if ts else [0]
        for t in divisors:
            for sign in (1, -1):
                tt, ss = (sign * t, sign * (ts // t)) if ts else (0, sign)
                r2 = tuple(b + tt * x + ss * y for b, x, y in zip(beta, e, f))
                if r2 in seen:
                    continue
                seen.add(r2)
                rec = PairRecord(r, r2, k)
                if saturated and k * k != 4 and not rec.embedding().is_saturated():
                    continue
                out.append(rec)
                if len(out) >= count:
                    return out
    return out


def complement_of_pair(p: PairRecord) -> Matrix:
    """Gram matrix of the orthogonal complement of the saturated span."""
    if p.k < 3:
        raise DomainError("complement_of_pair needs k >= 3 so that the span is indefinite")
    return orthogonal_complement(saturate(p.embedding()))


def pair_isometries(k: int) -> dict[str, Matrix]:
    """Generators of O(L) for L = [[2, k], [k, 2]], acting on column coordinates."""
    return {
        "negation": ((-1, 0), (0, -1)),
        "reflection_r": ((-1, -k), (0, 1)),
        "reflection_r2": ((1, 0), (-k, -1)),
        "swap": ((0, 1), (1, 0)),
    }


# -- Weyl group orders ------------------------------------------------------


def _components(nodes: Sequence[int], gram: Matrix) -> list[list[int]]:
    left = set(nodes)
    out = []
    while left:
        stack = [min(left)]
        comp = []
        left.discard(stack[0])
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in list(left):
                if gram[a][b]:
                    left.discard(b)
                    stack.append(b)
        out.append(sorted(comp))
    return out


def _orbit_size(nodes: Sequence[int], gram: Matrix, j: int) -> int:
    """Size of the Weyl orbit of the fundamental weight at node j."""
    idx = {a: t for t, a in enumerate(nodes)}
    start = tuple(int(a == j) for a in nodes)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for lam in frontier:
            for a in nodes:
                c = lam[idx[a]]
                if c == 0:
                    continue
                new = tuple(lam[idx[b]] - c * gram[a][b] for b in nodes)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return len(seen)


def weyl_group_order(gram: Sequence[Sequence[int]], nodes: Sequence[int] | None = None) -> int:
    """Order of a finite simply-laced Weyl group by orbit-stabilizer.

    |W| = |W omega_j| * |W_J| where J drops a leaf j; components multiply.
    """
    gram = tuple(tuple(r) for r in gram)
    nodes = list(range(len(gram))) if nodes is None else list(nodes)
    if not nodes:
        return 1
    total = 1
    for comp in _components(nodes, gram):
        if len(comp) == 1:
            total *= 2
            continue
        leaves = [a for a in comp if sum(1 for b in comp if b != a and gram[a][b]) == 1]
        if not leaves:
            raise DomainError("diagram is not a finite-type tree")
        j = leaves[-1]
        rest = [a for a in comp if a != j]
        total *= _orbit_size(comp, gram, j) * weyl_group_order(gram, rest)
    return total


def degree_product(degrees: Sequence[int] = E8_DEGREES) -> int:
    out = 1
    for d in degrees:
        out *= d
    return out


# -- the lower bound ----------------------------------------------------------


@dataclass(frozen=True)
class LowerBound:
    k: int
    positive: bool
    bound: IntervalReal | None
    coefficient: IntervalReal | None

    def to_dict(self) -> dict:
        out: dict = {"k": self.k, "positive": self.positive}
        if self.bound is not None and self.coefficient is not None:
            out["bound"] = list(self.bound.decimal_bounds())
            out["coefficient"] = list(self.coefficient.decimal_bounds())
        return out


def bound_coefficient(rel: Fraction = Fraction(1, 10**30)) -> IntervalReal:
    """2 (2 - pi^4/90) / (30240 pi^4 * 4 |W(E8)| * 1024)."""
    pi4 = pi_fourth(rel)
    return 2 * (2 - pi4 / 90) / (pi4 * (30240 * 4 * W_E8_ORDER * 1024))


def n_lower_bound(k: int, rel: Fraction = Fraction(1, 10**30)) -> LowerBound:
    """Certified lower bound for the number of prenilpotent-pair orbits with inner product k.

    k = 1 and 2 only come with the positivity statement.
    """
    if k <= 0:
        raise DomainError(f"the bound covers k >= 1, got {k}")
    if k < 3:
        return LowerBound(k, True, None, None)
    d = k * k - 4
    coeff = bound_coefficient(rel)
    d72 = d**3 * sqrt_interval(d, rel)
    return LowerBound(k, True, coeff * d72, coeff)
