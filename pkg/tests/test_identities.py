import numpy as np
import pytest
import scipy.linalg
from hypothesis import given

from lorcal import identities as ids
from lorcal.errors import ExcludedCase, MixedChirality, Unresolvable
from lorcal.expmap import exp_chiral, exp_real
from lorcal.skew import ChiralOp, SkewOp, c_map, cbar_map, eigenvalue, inner_chiral, so31_basis

from conftest import seeds, skew_ops

EX, EY, EZ, BX, BY, BZ = so31_basis()
SEEDS = range(25)


def assert_passed(*checks):
    for c in checks:
        assert c.passed, f"{c.name}: residual {c.residual:.3e} > {c.tol:.1e}"


@pytest.mark.parametrize("seed", SEEDS)
def test_product_identities(seed):
    rng = np.random.default_rng(seed)
    F, G = ids.gen_generic(rng), ids.gen_generic(rng)
    assert_passed(ids.check_product(F, G), ids.check_sandwich(F, G), ids.check_anticommutator(F, G))


@given(seeds)
def test_product_identities_hold_in_both_chiralities(seed):
    rng = np.random.default_rng(seed)
    F, G = ids.gen_skew(rng), ids.gen_skew(rng)
    for f in (c_map, cbar_map):
        assert_passed(ids.check_product(f(F), f(G)), ids.check_sandwich(f(F), f(G)),
                      ids.check_anticommutator(f(F), f(G)), ids.check_exp_commutator(f(F), f(G)),
                      ids.check_commutator_eigenvalue(f(F), f(G)), *ids.check_composition(f(F), f(G)))


def test_identities_refuse_mixed_chirality():
    with pytest.raises(MixedChirality):
        ids.check_product(c_map(EX), cbar_map(EY))


@pytest.mark.parametrize("seed", SEEDS)
def test_composition(seed):
    rng = np.random.default_rng(seed)
    assert_passed(*ids.check_composition(ids.gen_generic(rng), ids.gen_generic(rng)))


@pytest.mark.parametrize("seed", range(10))
def test_composition_against_dense_log(seed):
    # small operators: the principal log of e^F e^G is the chiral D itself
    rng = np.random.default_rng(seed)
    F, G = ids.gen_generic(rng, max_norm=0.8), ids.gen_generic(rng, max_norm=0.8)
    D = ids.compose_exponentials(F, G).D
    dense = scipy.linalg.logm(scipy.linalg.expm(F.matrix()) @ scipy.linalg.expm(G.matrix()))
    np.testing.assert_allclose(D.matrix(), dense, atol=1e-10)


def test_composition_vector_form():
    # (sinh l_D / l_D) D = b alpha A + a beta C + i b beta A x C
    rng = np.random.default_rng(3)
    F, G = ids.gen_generic(rng), ids.gen_generic(rng)
    comp = ids.compose_exponentials(F, G)
    expected = comp.b * comp.alpha * F.A + comp.a * comp.beta * G.A + 1j * comp.b * comp.beta * np.cross(F.A, G.A)
    np.testing.assert_allclose(comp.scaled_D.A, expected, atol=1e-12)


def test_composition_unresolvable_at_minus_identity():
    X = c_map(BZ * (np.pi / 2))
    with pytest.raises(Unresolvable):
        ids.compose_exponentials(X, X)


@pytest.mark.parametrize("seed", SEEDS)
def test_commutator_and_conjugation(seed):
    rng = np.random.default_rng(seed)
    F, G = ids.gen_generic(rng), ids.gen_generic(rng)
    assert_passed(
        ids.check_exp_commutator(F, G),
        ids.check_commutator_eigenvalue(F, G),
        ids.check_real_commutator_eigenvalue(ids.gen_skew(rng), ids.gen_skew(rng)),
        ids.check_conjugation(F, G),
    )


@pytest.mark.parametrize("seed", SEEDS)
def test_shared_null_eigenvector(seed):
    F, N = ids.gen_shared_pair(seed)
    s = ids.shared_eigenvector(N)
    np.testing.assert_allclose(N.matrix() @ s, 0, atol=1e-12)
    lam = eigenvalue(F)
    np.testing.assert_allclose(F.matrix() @ s, lam * s, atol=1e-10)
    assert_passed(*ids.check_shared_null(F, N), *ids.check_conjugation_null(F, N))


@pytest.mark.parametrize("seed", SEEDS)
def test_opposed_null_bracket(seed):
    assert_passed(ids.check_opposed_null_bracket(*ids.gen_opposed_null_pair(seed)))


@pytest.mark.parametrize("seed", SEEDS)
def test_null_products(seed):
    rng = np.random.default_rng(seed)
    A, C = ids.gen_null(rng), ids.gen_null(rng)
    checks = ids.check_null_product(A, C)
    assert len(checks) == 4
    assert_passed(*checks)
    K = ids.unit_boost_of(A, C)
    assert abs(eigenvalue(K) - 1) < 1e-10


def test_null_product_orthogonal_pair():
    A = ChiralOp([1, 1j, 0])
    C = ChiralOp([1, 1j, 0]) * 2j
    assert inner_chiral(A, C) == 0
    assert len(ids.check_null_product(A, C)) == 2


@pytest.mark.parametrize("seed", SEEDS)
def test_real_closed_forms(seed):
    assert_passed(ids.check_real_closed_form(ids.gen_rotation_type(seed)),
                  ids.check_real_closed_form(ids.gen_boost_type(seed)),
                  ids.check_real_closed_form(ids.gen_null_real(seed)))


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_t_operator_as_half_turn(n):
    assert_passed(ids.check_t_rotation(ids.gen_rotation_type(n + 7), n))


def test_t_rotation_needs_rotation_type():
    with pytest.raises(ValueError):
        ids.check_t_rotation(EX)


# ---------------------------------------------------------------- equal exponentials

def test_equal_exponentials_real():
    G = BZ * 0.4 + EZ * 0.3
    res = ids.classify_exp_equality(G + BZ * (4 * np.pi), G)
    assert res.equal and res.n == 2
    assert res.unit_rotation.allclose(BZ, 1e-12)


def test_equal_exponentials_chiral():
    X = c_map(BX)
    G = X * (0.3 + 0.2j)
    res = ids.classify_exp_equality(G - X * (2 * np.pi), G)
    # n is reported positive; the sense of rotation lives in the unit rotation
    assert res.equal and res.n == 1
    assert res.unit_rotation.allclose(-X, 1e-12)
    # chiral exponentials also agree at odd multiples of pi: excluded only for -I itself
    assert not ids.classify_exp_equality(G + X * np.pi, G).equal


def test_equal_exponentials_excluded_and_trivial():
    with pytest.raises(ExcludedCase):
        ids.classify_exp_equality(BZ * (2 * np.pi), SkewOp.zero())
    with pytest.raises(ExcludedCase):
        ids.classify_exp_equality(c_map(BZ * np.pi), c_map(BZ * (-np.pi)))
    F = EX + BY
    assert ids.classify_exp_equality(F, F) .n == 0
    assert not ids.classify_exp_equality(EX, EY).equal
    with pytest.raises(TypeError):
        ids.classify_exp_equality(EX, c_map(EX))


@given(seeds)
def test_distinct_null_operators_have_distinct_exponentials(seed):
    rng = np.random.default_rng(seed)
    A, C = ids.gen_null(rng), ids.gen_null(rng)
    assert not ids.classify_exp_equality(A, C).equal


# ---------------------------------------------------------------- frame independence

@given(skew_ops, skew_ops, skew_ops)
def test_invariants_are_observer_independent(F, G, K):
    L = exp_real(K * 0.3)
    Li = np.linalg.inv(L)
    Fp = SkewOp.from_matrix(L @ F.matrix() @ Li, tol=1e-6)
    Gp = SkewOp.from_matrix(L @ G.matrix() @ Li, tol=1e-6)
    scale = 1 + F.norm() * G.norm()
    assert abs(inner_chiral(c_map(Fp), c_map(Gp)) - inner_chiral(c_map(F), c_map(G))) < 1e-9 * scale * np.max(np.abs(L)) ** 2
    # composition transforms covariantly
    D = ids.compose_exponentials(c_map(F) * 0.3, c_map(G) * 0.3).scaled_D
    Dp = ids.compose_exponentials(c_map(Fp) * 0.3, c_map(Gp) * 0.3).scaled_D
    np.testing.assert_allclose(L @ D.matrix() @ Li, Dp.matrix(), atol=1e-8 * np.max(np.abs(L)) ** 2)


# ---------------------------------------------------------------- suite

def test_run_suite_small():
    a = ids.run_suite(samples=8, seed=5)
    b = ids.run_suite(samples=8, seed=5)
    report = a.pop("t_operator_normalization")
    b.pop("t_operator_normalization")
    assert a == b
    assert report["closed_forms_need"] == "half"
    assert {"product", "composition", "conjugation", "t_rotation", "exp_equality_real"} <= set(a)
    assert all(v["pass"] for v in a.values())
    strict = ids.run_suite(samples=2, seed=5, tol_override=1e-30)
    assert not strict["composition"]["pass"]
