import numpy as np
import pytest
from hypothesis import given
from scipy.optimize import linear_sum_assignment

from lorcal import oracle
from lorcal.errors import MixedChirality, ZeroOperator
from lorcal.minkowski import E0, E1, E3, ETA, inner_c
from lorcal.skew import (
    ChiralOp, Chirality, OpClass, SkewOp, ad_chiral, ad_matrix, bracket, bracket_chiral,
    c_apply, c_map, cbar_apply, cbar_map, classify, commutator, eigenvalue, inner_chiral,
    lambda_sq, null_eigenvectors, so31_basis, star,
)

from conftest import skew_ops

EX, EY, EZ, BX, BY, BZ = so31_basis()


def test_basis_blocks():
    np.testing.assert_array_equal(EX.matrix(), [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    # B_z rotates e1 towards e2 with v -> v x B
    np.testing.assert_array_equal(BZ.matrix() @ E1, [0, 0, -1, 0])
    assert np.linalg.matrix_rank(np.array([F.coords() for F in so31_basis()])) == 6


@given(skew_ops)
def test_matrix_is_metric_skew(F):
    m = F.matrix()
    np.testing.assert_allclose(ETA @ m, -(ETA @ m).T, atol=0)
    assert np.trace(m) == 0


@given(skew_ops)
def test_from_matrix_roundtrip(F):
    assert SkewOp.from_matrix(F.matrix()).allclose(F, 0)


def test_from_matrix_rejects_non_skew():
    with pytest.raises(ValueError):
        SkewOp.from_matrix(np.eye(4))


def test_star_examples():
    assert star(EX).allclose(BX)
    assert star(BX).allclose(-EX)
    assert star(SkewOp.zero()).allclose(SkewOp.zero())


@given(skew_ops)
def test_star_twice_is_minus_identity(F):
    assert star(star(F)).allclose(-F, 0)


def test_c_map_examples():
    X = c_map(EX)
    assert X.chirality is Chirality.C
    np.testing.assert_array_equal(X.A, [1, 0, 0])
    np.testing.assert_array_equal(c_map(BZ).A, [0, 0, 1j])
    np.testing.assert_array_equal(cbar_map(BZ).A, [0, 0, -1j])


@given(skew_ops)
def test_chiral_projector_relations(F):
    c, cb = c_map(F), cbar_map(F)
    np.testing.assert_array_equal(c.matrix() + cb.matrix(), 2 * F.matrix())
    np.testing.assert_array_equal(cbar_apply(c.as_skew()).matrix(), 0)
    np.testing.assert_array_equal(c_apply(c.as_skew()).matrix(), 2 * c.matrix())
    np.testing.assert_array_equal(c.matrix(), c_apply(F).matrix())


@given(skew_ops)
def test_chiral_square_is_scalar(F):
    for X in (c_map(F), cbar_map(F)):
        np.testing.assert_allclose(X.matrix() @ X.matrix(), lambda_sq(X) * np.eye(4), atol=1e-12)


@given(skew_ops)
def test_opposite_chiralities_commute(F):
    G = star(F) + EY
    np.testing.assert_allclose(commutator(c_map(F).matrix(), cbar_map(G).matrix()), 0, atol=1e-12)


@given(skew_ops)
def test_eigenvalue_branch(F):
    lam = eigenvalue(F)
    assert abs(lam**2 - lambda_sq(c_map(F))) <= 1e-12 * (1 + abs(lam) ** 2)
    assert lam.real >= 0
    if lam.real == 0:
        assert lam.imag >= 0


def test_eigenvalue_examples():
    assert eigenvalue(EX) == 1
    assert eigenvalue(BZ) == 1j
    assert eigenvalue(c_map(BZ * (-2.0))) == 2j
    assert eigenvalue(SkewOp(E1[1:], E3[1:])) == 0


def test_eigenvalue_matches_dense_spectrum():
    F = SkewOp([0.3, -1.0, 0.7], [1.1, 0.2, -0.4])
    w = oracle.eigen(c_map(F).matrix())[0]
    lam = eigenvalue(F)
    np.testing.assert_allclose(sorted(w, key=lambda z: (z.real, z.imag)),
                               sorted([lam, lam, -lam, -lam], key=lambda z: (z.real, z.imag)), atol=1e-12)


def test_classify():
    assert classify(SkewOp.zero()) is OpClass.ZERO
    assert classify(SkewOp([1, 0, 0], [0, 1, 0])) is OpClass.NULL
    assert classify(EX) is OpClass.GENERIC
    # |E| = |B| but not orthogonal: generic
    assert classify(SkewOp([1, 0, 0], [1, 0, 0])) is OpClass.GENERIC


@given(skew_ops, skew_ops)
def test_inner_product_is_half_anticommutator(F, G):
    X, Y = c_map(F), c_map(G)
    anti = X.matrix() @ Y.matrix() + Y.matrix() @ X.matrix()
    np.testing.assert_allclose(anti, 2 * inner_chiral(X, Y) * np.eye(4), atol=1e-11)


@given(skew_ops, skew_ops)
def test_chiral_bracket_matches_matrices(F, G):
    for f in (c_map, cbar_map):
        X, Y = f(F), f(G)
        np.testing.assert_allclose(bracket_chiral(X, Y).matrix(), commutator(X.matrix(), Y.matrix()), atol=1e-11)
    # c is a Lie algebra map up to the factor 2
    np.testing.assert_allclose(2 * c_map(bracket(F, G)).matrix(),
                               commutator(c_map(F).matrix(), c_map(G).matrix()), atol=1e-11)


def test_mixed_chirality():
    with pytest.raises(MixedChirality):
        c_map(EX) + cbar_map(EX)
    with pytest.raises(MixedChirality):
        inner_chiral(c_map(EX), cbar_map(EX))
    assert np.all(bracket_chiral(c_map(EX), cbar_map(EY)).A == 0)


def assert_same_spectrum(actual, expected, atol):
    cost = np.abs(np.subtract.outer(actual, expected))
    rows, cols = linear_sum_assignment(cost)
    assert cost[rows, cols].max() <= atol, (actual, expected)


@given(skew_ops)
def test_ad_spectrum(F):
    # eigenvalues of G -> [F, G] are 0, 0, +-lambda, +-conj(lambda)
    lam = eigenvalue(F)
    # defective near null operators, so eigenvalues are only good to ~eps^(1/3)
    tol = 1e-4 * (1 + F.norm())
    w = oracle.eigen(ad_matrix(F))[0]
    assert_same_spectrum(w, np.array([0, 0, lam, -lam, np.conj(lam), -np.conj(lam)]), tol)
    wc = oracle.eigen(ad_chiral(c_map(F)))[0]
    assert_same_spectrum(wc, np.array([0, 2 * lam, -2 * lam]), tol)


def test_null_eigenvectors_examples():
    s = null_eigenvectors(EX)
    np.testing.assert_allclose(s[0], [1, 1, 0, 0], atol=1e-12)
    np.testing.assert_allclose(s[1], [1, -1, 0, 0], atol=1e-12)
    s = null_eigenvectors(BZ)
    np.testing.assert_allclose(sorted(x[3].real for x in s), [-1, 1], atol=1e-12)
    (s,) = null_eigenvectors(SkewOp([1, 0, 0], [0, 1, 0]))
    np.testing.assert_allclose(s, E0 + E3, atol=1e-12)
    with pytest.raises(ZeroOperator):
        null_eigenvectors(SkewOp.zero())


@given(skew_ops)
def test_null_eigenvectors_are_eigenvectors(F):
    if classify(F) is not OpClass.GENERIC:
        return
    lam = eigenvalue(F)
    if abs(lam) < 1e-3:
        return
    for sign, s in zip((1, -1), null_eigenvectors(F)):
        assert abs(inner_c(s, s)) <= 1e-8 * np.vdot(s, s).real
        np.testing.assert_allclose(c_map(F).matrix() @ s, sign * lam * s, atol=1e-8 * (1 + abs(lam)))


def test_json_roundtrip_and_validation():
    F = SkewOp([1, 2, 3], [-1, 0, 0.5])
    assert SkewOp.from_json(F.to_json()).allclose(F, 0)
    X = cbar_map(F)
    assert ChiralOp.from_json(X.to_json()).allclose(X, 0)
    with pytest.raises(ValueError, match="'B'"):
        SkewOp.from_json({"E": [0, 0, 0]})
    with pytest.raises(ValueError, match="3 components"):
        SkewOp.from_json({"E": [0, 0], "B": [0, 0, 0]})
