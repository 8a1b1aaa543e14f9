"""Integer-lattice linear algebra.

Gram matrices are tuples of integer tuples.  Everything is exact: integer
or :class:`~fractions.Fraction` arithmetic, never floating point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .errors import DegenerateLattice, DomainError, NotAnIsometry, NotSaturated

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


# -- small matrix helpers ---------------------------------------------------


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def gram_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    """Validate and freeze a square symmetric integer matrix."""
    m = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, bool) or int(x) != x:
                raise DomainError(f"non-integer Gram entry {x!r}")
            r.append(int(x))
        m.append(tuple(r))
    n = len(m)
    if any(len(r) != n for r in m):
        raise DomainError("Gram matrix must be square")
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise DomainError("Gram matrix must be symmetric")
    return tuple(m)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence) -> int | Fraction:
    return sum(x * y for x, y in zip(u, v))


def bilinear(g: Sequence[Sequence], u: Sequence, v: Sequence) -> int | Fraction:
    return dot(u, matvec(g, v))


def congruent(g: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    """Return B^T G B; the columns of B are the new basis vectors."""
    return as_matrix(matmul(matmul(transpose(b), g), b)) if b and b[0] else ()


def direct_sum(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    n, m = len(a), len(b)
    out = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
    for i in range(m):
        for j in range(m):
            out[n + i][n + j] = b[i][j]
    return as_matrix(out)


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise DegenerateLattice("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def diagonalize_rational(g: Sequence[Sequence[int]]) -> list[Fraction]:
    """Diagonal entries of a rational congruence diagonalization of g."""
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    diag: list[Fraction] = []
    for t in range(n):
        piv = next((i for i in range(t, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(t, n) for j in range(t, n) if a[i][j] != 0), None)
            if pair is None:
                diag.extend([Fraction(0)] * (n - t))
                return diag
            i, j = pair
            # e_i <- e_i + e_j gives norm 2 a_ij != 0
            for r in range(n):
                a[i][r] += a[j][r]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        _swap_sym(a, t, piv)
        p = a[t][t]
        for i in range(t + 1, n):
            if a[i][t] != 0:
                f = a[i][t] / p
                for j in range(t, n):
                    a[i][j] -= f * a[t][j]
                for j in range(t, n):
                    a[j][i] = a[i][j]
        diag.append(p)
    return diag


def _swap_sym(a: list[list], i: int, j: int) -> None:
    if i == j:
        return
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def det_signature(g: Sequence[Sequence[int]]) -> tuple[int, tuple[int, int]]:
    """Determinant and (positive, negative) inertia counts."""
    g = gram_matrix(g)
    diag = diagonalize_rational(g)
    return determinant(g), (sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0))


def is_even(g: Sequence[Sequence[int]]) -> bool:
    return all(g[i][i] % 2 == 0 for i in range(len(g)))


# -- Smith normal form ------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """U * A * V = D with U, V unimodular; D diagonal with d_1 | d_2 | ...

    ``u_inv`` and ``v_inv`` are the exact inverses of U and V.
    """

    diagonal: tuple[int, ...]
    u: Matrix
    v: Matrix
    u_inv: Matrix
    v_inv: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SNFResult:
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u, ui = identity(rows), identity(rows)
    v, vi = identity(cols), identity(cols)

    def row_add(i: int, j: int, c: int) -> None:  # row_i += c row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        for r in ui:  # ui <- ui * E^-1: col_j -= c col_i
            r[j] -= c * r[i]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in ui:
            r[i], r[j] = r[j], r[i]

    def row_neg(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in ui:
            r[i] = -r[i]

    def col_add(i: int, j: int, c: int) -> None:  # col_i += c col_j
        for r in a:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]
        vi[j] = [x - c * y for x, y in zip(vi[j], vi[i])]

    def col_swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vi[i], vi[j] = vi[j], vi[i]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0]
            if not entries:
                break
            _, pi, pj = min(entries)
            row_swap(t, pi)
            col_swap(t, pj)
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // a[t][t]
                if q:
                    row_add(i, t, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // a[t][t]
                if q:
                    col_add(j, t, -q)
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if t < rows and t < cols and a[t][t] < 0:
            row_neg(t)
    diagonal = tuple(a[i][i] for i in range(min(rows, cols)))
    return SNFResult(diagonal, as_matrix(u), as_matrix(v), as_matrix(ui), as_matrix(vi))


def column_lattice_basis(gens: Sequence[Sequence[Fraction | int]]) -> list[list[Fraction]]:
    """A Z-basis of the lattice spanned by the given vectors, as a list of vectors.

    ``gens`` is a list of vectors (each one a generator).
    """
    if not gens:
        return []
    den = lcm(*(Fraction(x).denominator for g in gens for x in g))
    mat = transpose([[int(Fraction(x) * den) for x in g] for g in gens])
    snf = smith_normal_form(mat)
    basis = []
    for i, s in enumerate(snf.diagonal):
        if s == 0:
            continue
        basis.append([Fraction(snf.u_inv[r][i] * s, den) for r in range(len(mat))])
    return basis


# -- sublattices ------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """A sublattice given by integer coordinate vectors in the ambient basis."""

    ambient: Matrix
    basis: tuple[Vector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ambient", gram_matrix(self.ambient))
        object.__setattr__(self, "basis", tuple(tuple(int(x) for x in b) for b in self.basis))
        n = len(self.ambient)
        if any(len(b) != n for b in self.basis):
            raise DomainError("basis vectors must have ambient dimension")
        if self.basis and smith_normal_form(self.basis).rank != len(self.basis):
            raise DomainError("basis vectors are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> Matrix:
        return congruent(self.ambient, transpose(self.basis)) if self.basis else ()

    def index_in_saturation(self) -> int:
        if not self.basis:
            return 1
        out = 1
        for s in smith_normal_form(self.basis).diagonal:
            out *= s
        return out

    def is_saturated(self) -> bool:
        return self.index_in_saturation() == 1


def saturate(e: Embedding) -> Embedding:
    """(L tensor Q) intersected with the ambient lattice."""
    if e.basis and determinant(e.gram()) == 0:
        raise DegenerateLattice("span of the embedding is degenerate")
    if not e.basis:
        return e
    # basis rows B (r x n): U B V = D, so the row space over Q is spanned by
    # the first r rows of V^-1, which extend to a unimodular basis
    snf = smith_normal_form(e.basis)
    return Embedding(e.ambient, tuple(snf.v_inv[i] for i in range(e.rank)))


def complement_basis(e: Embedding) -> tuple[Vector, ...]:
    n = len(e.ambient)
    if not e.basis:
        return tuple(tuple(r) for r in identity(n))
    m = matmul(e.basis, e.ambient)  # r x n, rows b_i^T G
    snf = smith_normal_form(m)
    r = snf.rank
    return tuple(tuple(snf.v[row][c] for row in range(n)) for c in range(r, n))


def orthogonal_complement(e: Embedding) -> Matrix:
    """Gram matrix of the orthogonal complement of a saturated sublattice."""
    if not e.is_saturated():
        raise NotSaturated("sublattice is not saturated; saturate it first")
    basis = complement_basis(e)
    if not basis:
        return ()
    return congruent(e.ambient, transpose(basis))


# -- discriminant forms -----------------------------------------------------


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * (x.numerator // (2 * x.denominator))


Element = tuple[int, ...]


@dataclass(frozen=True)
class DiscForm:
    """K*/K with its Q/Z bilinear form and, for even K, Q/2Z quadratic form.

    Elements are coefficient tuples with respect to ``generators`` (dual
    vectors written in the lattice's own basis), reduced modulo ``orders``.
    """

    gram: Matrix
    orders: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    bilinear_table: tuple[tuple[Fraction, ...], ...]
    quadratic_values: tuple[Fraction, ...] | None
    _reducer: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _slots: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out

    @property
    def even(self) -> bool:
        return self.quadratic_values is not None

    def zero(self) -> Element:
        return (0,) * len(self.orders)

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(o) for o in self.orders))

    def normalize(self, x: Sequence[int]) -> Element:
        return tuple(int(a) % o for a, o in zip(x, self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return self.normalize([a + b for a, b in zip(x, y)])

    def scale(self, c: int, x: Element) -> Element:
        return self.normalize([c * a for a in x])

    def vector(self, x: Element) -> tuple[Fraction, ...]:
        n = len(self.gram)
        return tuple(sum((a * g[i] for a, g in zip(x, self.generators)), Fraction(0)) for i in range(n))

    def reduce(self, v: Sequence[Fraction | int]) -> Element:
        """Class of a dual vector v (coordinates in the lattice basis)."""
        y = matvec(self.gram, v)
        if any(Fraction(t).denominator != 1 for t in y):
            raise DomainError("vector is not in the dual lattice")
        uy = matvec(self._reducer, [int(t) for t in y])
        return self.normalize([uy[s] for s in self._slots])

    def b(self, x: Element, y: Element) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    if c:
                        total += a * c * self.bilinear_table[i][j]
        return _mod1(total)

    def q(self, x: Element) -> Fraction:
        if self.quadratic_values is None:
            raise DomainError("quadratic form needs an even lattice")
        v = self.vector(x)
        return _mod2(bilinear(self.gram, v, v))

    def is_isotropic(self, elements: Iterable[Element]) -> bool:
        return all(self.q(x) == 0 for x in elements)


def discriminant_form(g: Sequence[Sequence[int]]) -> DiscForm:
    g = gram_matrix(g)
    if determinant(g) == 0:
        raise DegenerateLattice("discriminant form of a degenerate lattice")
    snf = smith_normal_form(g)
    slots = tuple(i for i, d in enumerate(snf.diagonal) if d > 1)
    orders = tuple(snf.diagonal[i] for i in slots)
    n = len(g)
    # U G V = D: the dual vector V e_i / d_i generates the i-th cyclic factor
    gens = tuple(tuple(Fraction(snf.v[r][i], snf.diagonal[i]) for r in range(n)) for i in slots)
    table = tuple(tuple(_mod1(bilinear(g, x, y)) for y in gens) for x in gens)
    quad = tuple(_mod2(bilinear(g, x, x)) for x in gens) if is_even(g) else None
    return DiscForm(g, orders, gens, table, quad, snf.u, slots)


# -- maps between discriminant forms ----------------------------------------


@dataclass(frozen=True)
class DiscMap:
    """Homomorphism given by the images of the source generators."""

    source: DiscForm
    target: DiscForm
    images: tuple[Element, ...]

    def __call__(self, x: Element) -> Element:
        out = self.target.zero()
        for a, img in zip(x, self.images):
            out = self.target.add(out, self.target.scale(a, img))
        return out

    def compose(self, first: DiscMap) -> DiscMap:
        """self after first."""
        return DiscMap(first.source, self.target, tuple(self(img) for img in first.images))

    def is_identity(self) -> bool:
        return all(
            self.images[i] == self.source.normalize([int(i == j) for j in range(len(self.images))])
            for i in range(len(self.images))
        )

    def is_bijective(self) -> bool:
        if self.source.order != self.target.order:
            return False
        seen = {self(x) for x in self.source.elements()}
        return len(seen) == self.source.order

    def scales_forms_by(self, sign: int) -> bool:
        """Check b(fx, fy) = sign * b(x, y) and, for even forms, the same for q."""
        s, t = self.source, self.target
        m = len(self.images)
        for i in range(m):
            unit = tuple(int(i == j) for j in range(m))
            if s.even and t.even and t.q(self.images[i]) != _mod2(sign * s.q(unit)):
                return False
            for j in range(m):
                unit_j = tuple(int(j == l) for l in range(m))
                if t.b(self.images[i], self.images[j]) != _mod1(sign * s.b(unit, unit_j)):
                    return False
        return True

    def key(self) -> tuple[Element, ...]:
        return self.images


def o_action_on_disc(g: Sequence[Sequence[int]], iso: Sequence[Sequence[int]]) -> DiscMap:
    """The automorphism of the discriminant form induced by an isometry.

    ``iso`` acts on coordinate column vectors.
    """
    g = gram_matrix(g)
    iso = as_matrix(iso)
    if congruent(g, iso) != g:
        raise NotAnIsometry("matrix does not preserve the Gram form")
    disc = discriminant_form(g)
    images = tuple(disc.reduce(matvec(iso, gen)) for gen in disc.generators)
    return DiscMap(disc, disc, images)


def generated_group(maps: Sequence[DiscMap]) -> list[DiscMap]:
    """Closure of a set of automorphisms under composition."""
    if not maps:
        return []
    src = maps[0].source
    ident = DiscMap(src, src, tuple(tuple(int(i == j) for j in range(len(src.orders))) for i in range(len(src.orders))))
    group = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for m in maps:
                c = m.compose(h)
                if c.key() not in group:
                    group[c.key()] = c
                    nxt.append(c)
        frontier = nxt
    return list(group.values())


def _candidate_images(source: DiscForm, target: DiscForm, sign: int) -> list[list[Element]]:
    cands = []
    m = len(source.orders)
    for i, o in enumerate(source.orders):
        unit = tuple(int(i == j) for j in range(m))
        want_b = _mod1(sign * source.b(unit, unit))
        want_q = _mod2(sign * source.q(unit)) if source.even and target.even else None
        row = []
        for y in target.elements():
            if target.scale(o, y) != target.zero():
                continue
            if target.b(y, y) != want_b:
                continue
            if want_q is not None and target.q(y) != want_q:
                continue
            row.append(y)
        cands.append(row)
    return cands


def form_isometries(source: DiscForm, target: DiscForm, sign: int = 1) -> list[DiscMap]:
    """All bijections scaling the forms by ``sign`` (+1 isometries, -1 anti-isometries).

    Brute force over images of the generators.
    """
    if source.order != target.order:
        return []
    out = []
    for images in itertools.product(*_candidate_images(source, target, sign)):
        f = DiscMap(source, target, tuple(images))
        if f.scales_forms_by(sign) and f.is_bijective():
            out.append(f)
    return out


def anti_isometries(source: DiscForm, target: DiscForm) -> list[DiscMap]:
    return form_isometries(source, target, -1)


def glue_lattice(L: Sequence[Sequence[int]], K: Sequence[Sequence[int]], graph: DiscMap) -> Matrix:
    """Gram matrix of the preimage of the graph of ``graph`` in L* + K*.

    Coordinates are ordered (L basis, K basis).
    """
    L, K = gram_matrix(L), gram_matrix(K)
    if not (is_even(L) and is_even(K)):
        raise DomainError("gluing needs even lattices")
    dl, dk = graph.source, graph.target
    if dl.gram != L or dk.gram != K:
        raise DomainError("graph must map the discriminant form of L to that of K")
    if not (graph.scales_forms_by(-1) and graph.is_bijective()):
        raise NotAnIsometry("glue map is not an anti-isometry")
    nl, nk = len(L), len(K)
    gens: list[list[Fraction]] = []
    for i in range(nl + nk):
        gens.append([Fraction(int(i == j)) for j in range(nl + nk)])
    for gen, img in zip(dl.generators, graph.images):
        gens.append(list(gen) + list(dk.vector(img)))
    basis = column_lattice_basis(gens)
    total = direct_sum(L, K)
    gram = matmul(matmul(basis, total), transpose(basis))
    if any(x.denominator != 1 for row in gram for x in row):
        raise NotAnIsometry("glued lattice is not integral")
    if len(gram) != nl + nk:
        raise DomainError("glued lattice has the wrong dimension")
    return as_matrix(gram)


# -- JSON -------------------------------------------------------------------


def gram_to_json(g: Sequence[Sequence[int]]) -> str:
    return json.dumps({"n": len(g), "gram": [list(r) for r in g]})


def gram_from_json(text: str) -> Matrix:
    data = json.loads(text)
    if not isinstance(data, dict) or "gram" not in data:
        raise DomainError("expected an object with a 'gram' field")
    g = gram_matrix(data["gram"])
    if "n" in data and data["n"] != len(g):
        raise DomainError("'n' does not match the Gram matrix size")
    return g
