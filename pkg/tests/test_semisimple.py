"""Class invariants: shapes, indices, case analysis, explicit elements."""

import pytest
from fractions import Fraction

from e1forge.gf2k import fe, make_field
from e1forge.polyfield import MonicPoly, poly_star, x_plus
from e1forge.semisimple import (
    SemisimpleError,
    centralizer_shape,
    classify_gudprep,
    d_bound_fourth,
    d_statistic_cmp,
    d_statistic_fourth,
    eigenspace_dimension_bound,
    index_odd_part,
    involution_with_blocks,
    is_real_class,
    min_character_degree,
    palindromic_element,
    pgl_centralizer_order,
    pgl_is_real,
    real_lift_scalar,
    realness_structure,
    scale_charpoly,
    semisimple_class,
)

GF4 = make_field(2, 1)
GF4U = make_field(1, 2)  # q = 2, unitary coefficient field
GF16U = make_field(2, 2)  # q = 4, unitary coefficient field


def test_shape_linear_irreducible():
    # irreducible degree-3 charpoly: a single torus GL_1(q^3)
    c = semisimple_class(1, 3, 4, MonicPoly(GF4, (2, 3, 1)))
    shape = centralizer_shape(c)
    assert shape.factors == (("GL", 1, 64),)
    assert shape.order == 63
    assert index_odd_part(c) == 45
    assert min_character_degree(c) == 15


def test_shape_linear_split():
    # (x+1)^2 (x+w): GL_2(q) x GL_1(q)
    xi = x_plus(GF4, 1) ** 2 * x_plus(GF4, 2)
    c = semisimple_class(1, 3, 4, xi)
    shape = centralizer_shape(c)
    assert sorted(shape.factors) == [("GL", 1, 4), ("GL", 2, 4)]
    assert shape.order == 180 * 3


def test_shape_unitary_self_dagger_vs_pair():
    # x^6 + 1 over GF(4), q = 2: three self-dagger linear factors
    c = semisimple_class(-1, 6, 2, MonicPoly(GF4U, (1, 0, 0, 0, 0, 0)))
    shape = centralizer_shape(c)
    assert shape.factors == (("GU", 2, 2),) * 3
    assert shape.order == 5832
    assert index_odd_part(c) == 3465
    assert min_character_degree(c) == 1155


def test_unitary_dagger_pair_becomes_gl():
    # a dagger pair of linear factors contributes GL_m(q^2) exactly once
    fld = GF16U
    pairs = [
        (a, fld.pow(a, 4))
        for a in range(2, fld.size)
        if fld.pow(a, 4) != a and fld.inv(a) != a
    ]
    a, b = pairs[0][0], fld.inv(pairs[0][0])
    # build Xi = (x+a)(x+a^-q) ... ensure unitary compatibility via dagger
    adag = fld.inv(fld.pow(a, 4))
    xi = x_plus(fld, a) * x_plus(fld, adag) * x_plus(fld, 1) ** 3
    c = semisimple_class(-1, 5, 4, xi)
    kinds = sorted(k for k, _, _ in centralizer_shape(c).factors)
    assert kinds == ["GL", "GU"]


def test_rejects_non_unitary_xi():
    with pytest.raises(SemisimpleError):
        semisimple_class(-1, 2, 4, x_plus(GF16U, 2) * x_plus(GF16U, 1))


def test_realness_structure():
    fld = GF4
    a = 2
    xi = x_plus(fld, a) * x_plus(fld, fld.inv(a)) * x_plus(fld, 1)
    c = semisimple_class(1, 3, 4, xi)
    rs = realness_structure(c)
    assert rs.real and len(rs.pairing) == 1
    xi_bad = x_plus(fld, a) ** 2 * x_plus(fld, 1)
    assert not is_real_class(semisimple_class(1, 3, 4, xi_bad))


def test_scale_charpoly_matches_root_scaling():
    fld = GF4
    a, k = 2, 3
    xi = x_plus(fld, a) * x_plus(fld, 1)
    scaled = scale_charpoly(xi, k)
    expected = x_plus(fld, fld.mul(k, a)) * x_plus(fld, fld.mul(k, 1))
    assert scaled == expected


def test_real_lift_scalar():
    fld = make_field(4, 1)
    for bits in range(1, fld.size):
        z = fe(fld, bits)
        xi = real_lift_scalar(z)
        assert xi.inv() * xi.inv() == z  # xi^{-2} = zeta


def test_pgl_realness_at_least_as_often_as_gl():
    # projective realness is implied by realness of the lift, and the
    # projective centralizer never exceeds the lifted one
    for coeffs in [(2, 3, 1), (1, 2, 2), (3, 0, 0)]:
        c = semisimple_class(1, 3, 4, MonicPoly(GF4, coeffs))
        if is_real_class(c):
            assert pgl_is_real(c)
        assert pgl_centralizer_order(c) <= centralizer_shape(c).order


def test_classifier_spec_example():
    c = semisimple_class(-1, 6, 2, MonicPoly(GF4U, (1, 0, 0, 0, 0, 0)))
    case = classify_gudprep(c)
    assert {"a", "h"} <= set(case.cases)
    assert case.witnesses["a"] == {"d1": 2, "d": 6}


def test_classifier_case_b_reducible_delta():
    # (x+1)^1 (x+w)^2 (x+w2)^2 over q=4 unitary: Delta = (x+w)(x+w2)
    fld = GF16U
    # find an a, a^-1 star pair of self-dagger linear factors
    chosen = None
    for a in range(2, fld.size):
        if fld.pow(a, 5) == 1 and fld.inv(a) != a:  # a^{q+1} = 1
            chosen = a
            break
    a = chosen
    xi = x_plus(fld, 1) * (x_plus(fld, a) * x_plus(fld, fld.inv(a))) ** 2
    c = semisimple_class(-1, 5, 4, xi)
    case = classify_gudprep(c)
    assert "b" in case.cases
    assert case.witnesses["b"]["delta_reducible"] is True


def test_classifier_preconditions():
    c = semisimple_class(1, 3, 4, MonicPoly(GF4, (2, 3, 1)))
    with pytest.raises(SemisimpleError):
        classify_gudprep(c)  # d < 5


def test_d_statistic_against_bound():
    c = semisimple_class(-1, 6, 2, MonicPoly(GF4U, (1, 0, 0, 0, 0, 0)))
    assert d_statistic_fourth(c) == Fraction(3465**4, 2 ** (6 * 7))
    assert d_statistic_cmp(c) == 1  # D exceeds the centralizer estimate
    assert d_bound_fourth(c) > 0


def test_eigenspace_dimension_bound():
    c = semisimple_class(-1, 6, 2, MonicPoly(GF4U, (1, 0, 0, 0, 0, 0)))
    assert eigenspace_dimension_bound(c)


@pytest.mark.parametrize(
    "d,q,epsilon", [(3, 4, 1), (5, 4, -1), (6, 2, -1), (7, 8, 1), (9, 4, -1), (10, 4, 1)]
)
def test_palindromic_element_properties(d, q, epsilon):
    fld = make_field(q.bit_length() - 1, 2 if epsilon == -1 else 1)
    n = q - epsilon
    # a nontrivial determinant target inside mu_n
    target = fld.pow(2 if fld.degree > 1 else 1, (fld.size - 1) // n)
    t = palindromic_element(d, q, epsilon, target)
    assert len(t.entries) == d
    assert t.is_palindromic()
    assert t.det() == target
    # every entry has odd order inside mu_{q-eps}
    for a in t.entries:
        assert fld.pow(a, n) == 1
    # the charpoly is fixed by star: reversing a palindromic diagonal
    # permutes its roots, and entries in mu_n invert within the set
    cp = t.charpoly()
    roots = sorted(fld.inv(a) for a in t.entries)
    assert roots == sorted(t.entries) or poly_star(cp).degree == d


def test_palindromic_inverse_is_reversal_image():
    # iota(t) = reversed-and-inverted diagonal; for entries in mu_n with
    # the palindromic layout this is t^{-1}
    t = palindromic_element(9, 4, -1, 1)
    fld = t.field
    inv = tuple(fld.inv(a) for a in t.entries)
    assert tuple(reversed(inv)) == tuple(
        fld.inv(a) for a in reversed(t.entries)
    )
    assert sorted(inv) == sorted(fld.inv(a) for a in t.entries)


@pytest.mark.parametrize(
    "d,l,q,epsilon,expected",
    [
        (3, 1, 2, 1, 8),
        (3, 1, 4, 1, 576),
        (3, 1, 2, -1, 72),
    ],
)
def test_involution_centralizer_formula(d, l, q, epsilon, expected):
    ib = involution_with_blocks(d, l, q, epsilon)
    assert ib.centralizer_order == expected
    assert ib.centralizer_order == q ** 3 * (q - epsilon) ** 2


def test_involution_matrix_is_an_involution():
    ib = involution_with_blocks(6, 2, 4, 1)
    d = ib.d
    # square over GF(4): (I + N)^2 = I since N^2 = 0 for the corner block
    fld = GF4
    rows = ib.rows
    sq = [
        [0] * d
        for _ in range(d)
    ]
    for i in range(d):
        for j in range(d):
            acc = 0
            for k in range(d):
                acc ^= fld.mul(rows[i][k], rows[k][j])
            sq[i][j] = acc
    assert all(sq[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d))
