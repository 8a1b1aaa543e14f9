from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from e10pairs.arith import E2Case, d_profile
from e10pairs.e10 import complement_of_pair, construct_pairs, dynkin_gram, e8_gram
from e10pairs.errors import DimensionUnsupported, DomainError, UnsupportedConfiguration
from e10pairs.genus import genus_of_gram, predicted_K_genus
from e10pairs.lattice import direct_sum
from e10pairs.mass import (
    MassValue,
    closed_form_coeff,
    diagonal_factor,
    local_mass_ratio,
    mass_closed_form,
    mass_stepwise,
    numeric_mass,
    orbit_lower_bound,
    std_p,
)
from e10pairs.padic import Species

W_E7 = 2903040


def orthogonal_group_order(m, q, eps):
    """|O^eps_{2m}(F_q)|."""
    out = 2 * q ** (m * (m - 1)) * (q**m - eps)
    for i in range(1, m):
        out *= q ** (2 * i) - 1
    return out


def test_std_2():
    assert std_p(2) == Fraction(2048, 2835)


def test_diagonal_factor_values():
    assert diagonal_factor(Species(8, 1), 2) == Fraction(32768, 42525)
    assert diagonal_factor(Species(8, 1), 2) == Fraction(16, 15) * std_p(2)
    assert diagonal_factor(Species(8, -1), 2) == Fraction(16, 17) * std_p(2)
    assert diagonal_factor(Species(7), 3) == 1 / (2 * (1 - Fraction(1, 9)) * (1 - Fraction(1, 81)) * (1 - Fraction(1, 729)))
    assert diagonal_factor(Species(1), 2) == Fraction(1, 2)
    assert diagonal_factor(Species(0, 1), 2) == 1
    with pytest.raises(UnsupportedConfiguration):
        diagonal_factor(Species(0, -1), 2)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_plus_minus_ratio_matches_finite_orthogonal_groups(m):
    # local densities of even unimodular 2-adic forms are proportional to |O(F_2)|
    ratio = diagonal_factor(Species(2 * m, 1), 2) / diagonal_factor(Species(2 * m, -1), 2)
    assert ratio == Fraction(orthogonal_group_order(m, 2, -1), orthogonal_group_order(m, 2, 1))


def test_e8_mass():
    assert mass_stepwise(genus_of_gram(e8_gram())).exact() == Fraction(1, 696729600)


def test_class_number_one_genera():
    i8 = [[int(i == j) for j in range(8)] for i in range(8)]
    assert mass_stepwise(genus_of_gram(i8)).exact() == Fraction(1, 2**8 * factorial(8))
    e7 = dynkin_gram(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])
    assert mass_stepwise(genus_of_gram(direct_sum(e7, ((2,),)))).exact() == Fraction(1, 2 * W_E7)
    d8 = dynkin_gram(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7)])
    assert mass_stepwise(genus_of_gram(d8)).exact() == Fraction(1, 2**8 * factorial(8))


def test_closed_form_examples():
    assert mass_closed_form(3).coeff == Fraction(1, 14515200)
    assert mass_closed_form(6) == MassValue(Fraction(1, 30240 * 1024), 32)
    assert mass_closed_form(4).coeff == Fraction(1, 30240 * 512 * 2)
    assert mass_closed_form(3, corrected=True).coeff == Fraction(1, 30240 * 272 * 2)
    assert closed_form_coeff(12) == Fraction(1, 30240 * 512 * 2)
    with pytest.raises(DomainError):
        mass_closed_form(2)


@pytest.mark.parametrize("k", range(3, 201))
def test_stepwise_matches_corrected_closed_form(k):
    assert mass_stepwise(predicted_K_genus(k)) == mass_closed_form(k, corrected=True)


@pytest.mark.parametrize("k", range(4, 201, 2))
def test_stepwise_matches_published_closed_form_for_even_k(k):
    assert mass_stepwise(predicted_K_genus(k)) == mass_closed_form(k)


@given(st.integers(min_value=3, max_value=10**4).filter(lambda k: k % 2 == 1))
def test_odd_k_differs_by_15_over_17(k):
    assert mass_stepwise(predicted_K_genus(k)).coeff / mass_closed_form(k).coeff == Fraction(15, 17)


def test_odd_p_local_ratio():
    # m_p / std_p = 1/2 p^(7 e_p / 2) for the odd-p symbols of K
    for k in (3, 5, 13, 27):
        prof = d_profile(k)
        g = predicted_K_genus(k)
        for p in prof.odd_primes():
            r = local_mass_ratio(g.locals[p]).rebase(7 * prof.e(p))
            assert r.rational == Fraction(1, 2)


def short_vector_count(gram, bound):
    """Number of nonzero v with v^T G v <= bound, by exact LDL^T enumeration."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    q = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i][i] = a[i][i]
        for j in range(i + 1, n):
            q[i][j] = a[i][j] / a[i][i]
        for j in range(i + 1, n):
            for l in range(j, n):
                a[j][l] -= q[i][j] * a[i][i] * q[i][l]
                a[l][j] = a[j][l]
    count = 0
    x = [0] * n

    def rec(i, rem):
        nonlocal count
        if i < 0:
            count += any(x)
            return
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        lo = c
        while q[i][i] * (lo - c) ** 2 <= rem:
            lo -= 1
        xi = int(lo) - 1
        while True:
            xi += 1
            t = q[i][i] * (xi - c) ** 2
            if xi > c and t > rem:
                break
            if t <= rem:
                x[i] = xi
                rec(i - 1, rem - t)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return count


def test_short_vector_count_oracle():
    assert short_vector_count(e8_gram(), 2) == 240
    assert short_vector_count(((2, -1), (-1, 2)), 2) == 6


def test_k3_genus_is_a_single_class_with_e7_roots():
    # the k = 3 complement has root system E7 and contains E7 + <10> with index 2,
    # so its automorphism group has order at least 2 |W(E7)|; the mass is exactly that
    K = complement_of_pair(construct_pairs(3, 1)[0])
    assert short_vector_count(K, 2) == 126
    assert mass_stepwise(genus_of_gram(K)).coeff == Fraction(1, 16450560)
    assert mass_stepwise(genus_of_gram(K)) == MassValue(Fraction(1, 30240 * 272 * 2), 5)


def test_numeric_mass():
    m = numeric_mass(mass_closed_form(3))
    assert abs(float(m.mid) - 1.952e-7) < 1e-10
    assert m.radius <= m.lo / 10**12
    tight = numeric_mass(mass_closed_form(3), Fraction(1, 10**25))
    assert tight.radius <= Fraction(1, 10**25)
    e8 = numeric_mass(mass_stepwise(genus_of_gram(e8_gram())))
    assert e8.contains(Fraction(1, 696729600))
    with pytest.raises(DomainError):
        numeric_mass(mass_closed_form(3), 0)


def test_mass_value_validation():
    with pytest.raises(DomainError):
        MassValue(Fraction(0), 5)
    with pytest.raises(DomainError):
        MassValue(Fraction(1), 0)
    assert MassValue(Fraction(1), 5).exact() is None
    assert MassValue(Fraction(1, 2), 5).to_dict() == {"coeff_num": 1, "coeff_den": 2, "d": 5}


def test_orbit_lower_bound():
    assert orbit_lower_bound(12, 10) == Fraction(2, 40)
    assert orbit_lower_bound(5, 696729600) == Fraction(2, 4 * 696729600)
    with pytest.raises(DomainError):
        orbit_lower_bound(12, 3)


def test_dimension_errors():
    with pytest.raises(DimensionUnsupported):
        mass_stepwise(genus_of_gram(((2, -1), (-1, 2))))
    with pytest.raises(DomainError):
        mass_stepwise(genus_of_gram([[-x for x in row] for row in e8_gram()]))
