from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from e10pairs.errors import DegenerateLattice, DomainError, NotAnIsometry, NotSaturated
from e10pairs.lattice import (
    Embedding,
    anti_isometries,
    column_lattice_basis,
    congruent,
    det_signature,
    determinant,
    diagonalize_rational,
    direct_sum,
    discriminant_form,
    form_isometries,
    generated_group,
    glue_lattice,
    gram_from_json,
    gram_to_json,
    identity,
    inverse,
    is_even,
    matmul,
    o_action_on_disc,
    orthogonal_complement,
    saturate,
    smith_normal_form,
)

from strategies import change_basis, nondegenerate, symmetric_matrices, unimodular


def test_det_signature_examples():
    assert det_signature([[2, 3], [3, 2]]) == (-5, (1, 1))
    assert det_signature([[2, -1], [-1, 2]]) == (3, (2, 0))
    assert det_signature([[0, 1], [1, 0]]) == (-1, (1, 1))


def test_gram_validation():
    with pytest.raises(DomainError):
        det_signature([[1, 2], [3, 1]])
    with pytest.raises(DomainError):
        det_signature([[1, 2]])


@given(symmetric_matrices())
def test_determinant_matches_sympy(g):
    sympy = pytest.importorskip("sympy")
    assert determinant(g) == sympy.Matrix(g).det()


@given(nondegenerate())
def test_inverse(g):
    assert matmul(g, inverse(g)) == [[Fraction(int(i == j)) for j in range(len(g))] for i in range(len(g))]


@given(nondegenerate())
def test_signature_matches_diagonalization(g):
    diag = diagonalize_rational(g)
    det, sig = det_signature(g)
    assert sig == (sum(x > 0 for x in diag), sum(x < 0 for x in diag))


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=1, max_size=5))
def test_smith_normal_form(rows):
    snf = smith_normal_form(rows)
    d = matmul(matmul(snf.u, rows), snf.v)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert x == (snf.diagonal[i] if i == j else 0)
    nz = [x for x in snf.diagonal if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert matmul(snf.u, snf.u_inv) == identity(len(rows))
    assert matmul(snf.v, snf.v_inv) == identity(4)


def test_smith_normal_form_matches_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import invariant_factors

    for rows in ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [[2, 3], [3, 2]], [[12, 0], [0, 18]]):
        want = [abs(int(x)) for x in invariant_factors(sympy.Matrix(rows))]
        assert [x for x in smith_normal_form(rows).diagonal if x] == [x for x in want if x]


def test_discriminant_form_examples():
    d = discriminant_form([[2]])
    assert d.orders == (2,) and d.quadratic_values == (Fraction(1, 2),)
    d = discriminant_form([[2, 3], [3, 2]])
    assert d.orders == (5,) and d.quadratic_values == (Fraction(8, 5),)
    assert discriminant_form([[0, 1], [1, 0]]).order == 1
    with pytest.raises(DegenerateLattice):
        discriminant_form([[2, 2], [2, 2]])


@given(nondegenerate(even=True))
def test_discriminant_order_is_abs_det(g):
    d = discriminant_form(g)
    assert d.order == abs(determinant(g))
    assume(d.order <= 200)
    for x in d.elements():
        # q refines b: q(x) = b(x, x) mod 1
        assert (d.q(x) - d.b(x, x)).denominator == 1


@given(nondegenerate(max_n=3, even=True), st.data())
def test_discriminant_form_is_basis_independent(g, data):
    u = data.draw(unimodular(len(g)))
    h = change_basis(g, u)
    dg, dh = discriminant_form(g), discriminant_form(h)
    assume(dg.order <= 60)
    assert form_isometries(dg, dh, 1)


def test_saturation_and_complement():
    amb = [[1, 0], [0, 1]]
    e = Embedding(amb, [(2, 0)])
    assert e.index_in_saturation() == 2 and not e.is_saturated()
    assert saturate(e).basis == ((1, 0),) or saturate(e).basis == ((-1, 0),)
    with pytest.raises(NotSaturated):
        orthogonal_complement(e)
    assert orthogonal_complement(saturate(e)) == ((1,),)
    with pytest.raises(DomainError):
        Embedding(amb, [(1, 0), (2, 0)])


@given(nondegenerate(min_n=3, max_n=4, even=True), st.data())
def test_complement_properties(g, data):
    n = len(g)
    v = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    if not any(v) or sum(a * g[i][j] * b for i, a in enumerate(v) for j, b in enumerate(v)) == 0:
        return
    e = saturate(Embedding(g, [v]))
    comp = orthogonal_complement(e)
    assert len(comp) == n - 1
    # each complement basis vector is orthogonal to v
    from e10pairs.lattice import complement_basis

    for w in complement_basis(e):
        assert sum(a * g[i][j] * b for i, a in enumerate(v) for j, b in enumerate(w)) == 0


def test_o_action_and_generated_group():
    L = ((2, 3), (3, 2))
    neg = o_action_on_disc(L, ((-1, 0), (0, -1)))
    assert not neg.is_identity()
    assert neg.compose(neg).is_identity()
    assert len(generated_group([neg])) == 2
    with pytest.raises(NotAnIsometry):
        o_action_on_disc(L, ((1, 1), (0, 1)))


def test_anti_isometries_and_glue_a1_pair():
    # A1 + A1(-1) glues to the hyperbolic plane
    A = ((2,),)
    B = ((-2,),)
    maps = anti_isometries(discriminant_form(A), discriminant_form(B))
    assert len(maps) == 1
    M = glue_lattice(A, B, maps[0])
    assert det_signature(M) == (-1, (1, 1)) and is_even(M)


def test_glue_e8_from_a4_pair():
    # the complement of A4 in E8 is A4, and Delta(A4) is anti-isometric to itself
    a4 = ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -1, 2, -1), (0, 0, -1, 2))
    maps = anti_isometries(discriminant_form(a4), discriminant_form(a4))
    assert len(maps) == 2
    for f in maps:
        M = glue_lattice(a4, a4, f)
        assert det_signature(M) == (1, (8, 0)) and is_even(M)


def test_column_lattice_basis():
    basis = column_lattice_basis([[1, 0], [0, 1], [Fraction(1, 2), Fraction(1, 2)]])
    assert len(basis) == 2
    assert abs(determinant([[int(2 * x) for x in b] for b in basis])) == 2


def test_gram_json_round_trip():
    g = ((2, 3), (3, 2))
    assert gram_from_json(gram_to_json(g)) == g
    with pytest.raises(DomainError):
        gram_from_json('{"n": 3, "gram": [[2, 3], [3, 2]]}')
    with pytest.raises(DomainError):
        gram_from_json('[1, 2]')


def test_direct_sum_and_congruent():
    s = direct_sum(((2,),), ((4,),))
    assert s == ((2, 0), (0, 4))
    assert congruent(s, ((1, 0), (1, 1))) == ((6, 4), (4, 4))
