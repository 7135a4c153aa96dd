"""
Executable operator identities for chiral operators, with samplers for their hypotheses.

Each ``check_*`` function returns :class:`IdentityCheck` records holding
both sides and the max-entry residual instead of asserting, so the same
code serves the test suite and the ``verify-identities`` report.

Operators below are C-chirality :class:`ChiralOp` unless stated; the
product of two of them obeys ``XY = <X,Y> I + [X,Y]/2``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ExcludedCase, MixedChirality, Unresolvable
from .expmap import cosh_coef, exp_chiral, exp_real, exp_via_t_operator, sinhc_coef, t_operator
from .skew import (
    ChiralOp,
    OpClass,
    SkewOp,
    bracket_chiral,
    c_map,
    classify,
    commutator,
    eigenvalue,
    inner_chiral,
    lambda_sq,
)

MAX_NORM = 3.0


@dataclass(frozen=True, eq=False)
class IdentityCheck:
    name: str
    lhs: np.ndarray
    rhs: np.ndarray
    residual: float
    tol: float = 1e-10

    @property
    def passed(self):
        return self.residual <= self.tol


def residual_check(name, lhs, rhs, tol):
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    return IdentityCheck(name, lhs, rhs, float(np.max(np.abs(lhs - rhs))), tol)


def _same(*ops):
    if len({op.chirality for op in ops}) > 1:
        raise MixedChirality("identity needs operators of one chirality")


# ---------------------------------------------------------------- samplers

def _rng(seed):
    return np.random.default_rng(seed)


def _ball(rng, dim, radius):
    x = rng.normal(size=dim)
    return x * radius * rng.uniform() ** (1.0 / dim) / np.linalg.norm(x)


def gen_skew(seed, max_norm=MAX_NORM):
    """Real operator uniform in the ball ``||(E, B)|| <= max_norm``."""
    return SkewOp.from_coords(_ball(_rng(seed), 6, max_norm))


def gen_generic(seed, max_norm=MAX_NORM):
    """``cF`` for a random real ``F``; generic with probability one."""
    return c_map(gen_skew(seed, max_norm))


def _orthonormal_pair(rng):
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    return q[:, 0], q[:, 1]


def gen_null(seed, max_norm=MAX_NORM):
    """``A = e (i_hat + i j_hat)`` with orthonormal ``i_hat, j_hat``: ``A . A = 0`` exactly."""
    rng = _rng(seed)
    i_hat, j_hat = _orthonormal_pair(rng)
    e = rng.uniform(0.1, max_norm / np.sqrt(2)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return ChiralOp(e * (i_hat + 1j * j_hat))


def _null_partner(F, sign, rng, max_norm=MAX_NORM):
    """
    Null operator sharing the null eigenvector of ``F`` for eigenvalue ``sign * lambda_F``.

    With ``k = A_F / lambda_F`` (``k . k = 1``), its vector is an isotropic
    eigenvector of ``n -> k x n`` for eigenvalue ``-sign * i``, orthogonal to ``k``.
    """
    lam = eigenvalue(F)
    k = F.A / lam
    v = rng.normal(size=3) + 1j * rng.normal(size=3)
    v = v - (v @ k) * k
    n = 0.5 * (v + sign * 1j * np.cross(k, v))
    n = n / np.linalg.norm(n)
    return ChiralOp(rng.uniform(0.1, max_norm / 2) * np.exp(1j * rng.uniform(0, 2 * np.pi)) * n, F.chirality)


def gen_shared_pair(seed, max_norm=MAX_NORM):
    """Generic ``F`` and null ``N`` with a common null eigenvector (``F s = lambda_F s``, ``N s = 0``)."""
    rng = _rng(seed)
    F = c_map(SkewOp.from_coords(_ball(rng, 6, max_norm)))
    while classify(F) is not OpClass.GENERIC or abs(eigenvalue(F)) < 0.05:
        F = c_map(SkewOp.from_coords(_ball(rng, 6, max_norm)))
    return F, _null_partner(F, +1, rng, max_norm)


def gen_opposed_null_pair(seed, max_norm=MAX_NORM):
    """Generic ``F`` with null ``N`` on its ``+lambda`` eigenvector and ``N_dag`` on its ``-lambda`` one."""
    rng = _rng(seed)
    F, N = gen_shared_pair(rng, max_norm)
    return F, N, _null_partner(F, -1, rng, max_norm)


def shared_eigenvector(N):
    """Kernel vector of a null chiral operator (complex, normalized)."""
    _, _, vh = np.linalg.svd(N.matrix())
    return vh[-1].conj()


def gen_rotation_type(seed, max_norm=MAX_NORM):
    """Real ``F`` with ``E . B = 0`` and ``|B| > |E|``, so ``lambda_cF`` is imaginary."""
    rng = _rng(seed)
    b = _ball(rng, 3, max_norm)
    while np.linalg.norm(b) < 0.2:
        b = _ball(rng, 3, max_norm)
    e = rng.normal(size=3)
    e -= (e @ b) / (b @ b) * b
    e *= rng.uniform(0, 0.9) * np.linalg.norm(b) / np.linalg.norm(e)
    return SkewOp(e, b)


def gen_boost_type(seed, max_norm=MAX_NORM):
    """Real ``F`` with ``E . B = 0`` and ``|E| > |B|``: ``lambda_cF`` is real."""
    F = gen_rotation_type(seed, max_norm)
    return SkewOp(F.B, F.E)


# ---------------------------------------------------------------- products

def check_product(F, G, tol=1e-12):
    """``FG = <F,G> I + [F,G]/2``."""
    _same(F, G)
    lhs = F.matrix() @ G.matrix()
    rhs = inner_chiral(F, G) * np.eye(4) + 0.5 * commutator(F.matrix(), G.matrix())
    return residual_check("product", lhs, rhs, tol)


def check_sandwich(F, G, tol=1e-12):
    """``G F G = 2<F,G> G - lambda_G^2 F``."""
    _same(F, G)
    g = G.matrix()
    lhs = g @ F.matrix() @ g
    rhs = 2 * inner_chiral(F, G) * g - lambda_sq(G) * F.matrix()
    return residual_check("sandwich", lhs, rhs, tol)


def check_anticommutator(F, G, tol=1e-12):
    """``FG + GF = 2<F,G> I`` (also observer independence of ``<F,G>``)."""
    _same(F, G)
    f, g = F.matrix(), G.matrix()
    return residual_check("anticommutator", f @ g + g @ f, 2 * inner_chiral(F, G) * np.eye(4), tol)


@dataclass(frozen=True, eq=False)
class ExpComposition:
    """``e^F e^G = e^D`` with the scalars of the two factors and ``cosh(lambda_D)``."""

    D: ChiralOp
    a: complex
    b: complex
    alpha: complex
    beta: complex
    cosh_lambda_D: complex
    coefficient: complex

    @property
    def scaled_D(self):
        """``(sinh lambda_D / lambda_D) D``, the combination fixed by the identity."""
        return self.D * self.coefficient


def compose_exponentials(F, G):
    """
    Find ``D`` with ``e^F e^G = e^D`` for chiral ``F, G``.

    ``(sinh lambda_D/lambda_D) D = b alpha F + a beta G + (b beta / 2)[F, G]`` and
    ``cosh lambda_D = a alpha + b beta <F, G>``.  ``lambda_D`` is taken as
    ``log(cosh + sinh)`` with ``sinh^2`` read off the vector side.  When the
    coefficient ``sinh lambda_D / lambda_D`` vanishes, ``D`` is only fixed up
    to the ``2 pi n`` ambiguity and :class:`Unresolvable` is raised.
    """
    _same(F, G)
    muF, muG = lambda_sq(F), lambda_sq(G)
    a, b = cosh_coef(muF), sinhc_coef(muF)
    alpha, beta = cosh_coef(muG), sinhc_coef(muG)
    scaled = F * (b * alpha) + G * (a * beta) + bracket_chiral(F, G) * (0.5 * b * beta)
    ch = a * alpha + b * beta * inner_chiral(F, G)
    sh = np.sqrt(complex(scaled.A @ scaled.A))
    if abs(sh) < 1e-4 and ch.real > 0:
        # lambda_D near 0: asinh(s)/s = 1 - s^2/6 + 3 s^4/40 - ...
        coef = 1.0 / (1 - sh**2 / 6 + 3 * sh**4 / 40)
    else:
        coef = sh / np.log(ch + sh)
    if abs(coef) < 1e-12:
        raise Unresolvable("sinh(lambda_D)/lambda_D = 0: D fixed only up to 2 pi n")
    return ExpComposition(scaled / coef, a, b, alpha, beta, ch, coef)


def check_composition(F, G, tol=1e-9):
    """``e^F e^G = e^D`` and ``cosh lambda_D = a alpha + b beta <F,G>`` for the computed ``D``."""
    comp = compose_exponentials(F, G)
    mat = residual_check("composition", exp_chiral(F) @ exp_chiral(G), exp_chiral(comp.D), tol)
    scalar = residual_check(
        "composition_cosh",
        cosh_coef(lambda_sq(comp.D)),
        comp.a * comp.alpha + comp.b * comp.beta * inner_chiral(F, G),
        tol,
    )
    return mat, scalar


def check_exp_commutator(F, G, tol=1e-10):
    """``[e^F, e^G] = (sinh lambda_F sinh lambda_G / lambda_F lambda_G) [F, G]``."""
    _same(F, G)
    lhs = commutator(exp_chiral(F), exp_chiral(G))
    rhs = sinhc_coef(lambda_sq(F)) * sinhc_coef(lambda_sq(G)) * commutator(F.matrix(), G.matrix())
    return residual_check("exp_commutator", lhs, rhs, tol)


@dataclass(frozen=True, eq=False)
class ExpEquality:
    equal: bool
    n: int = 0
    unit_rotation: object = None


def _exp_any(X):
    return exp_real(X) if isinstance(X, SkewOp) else exp_chiral(X)


def _norm(X):
    return X.norm() if isinstance(X, SkewOp) else float(np.linalg.norm(X.A))


def _lambda_any(X):
    return eigenvalue(c_map(X) if isinstance(X, SkewOp) else X)


def classify_exp_equality(F, G, tol=1e-9):
    """
    Compare ``e^F`` and ``e^G``; when equal, extract ``F - G = 2 pi n B_hat``.

    Accepts two chiral operators or two real operators.  Equal exponentials
    force ``B_hat`` to be a unit rotation (eigenvalues ``+-i``) commuting
    with both.  The case ``e^F = +-I`` (``= I`` for real operators) is
    outside the statement and raises :class:`ExcludedCase`.  For two null
    chiral operators equality forces ``F = G``.

    ``lambda`` is taken on the fixed branch, so ``n >= 1`` and the sense of
    the rotation is carried by ``B_hat``.
    """
    real = isinstance(F, SkewOp)
    if real != isinstance(G, SkewOp):
        raise TypeError("compare two real or two chiral operators")
    if not real:
        _same(F, G)
    eF, eG = _exp_any(F), _exp_any(G)
    scale = 1.0 + np.max(np.abs(eF))
    if np.max(np.abs(eF - eG)) > tol * scale:
        return ExpEquality(False)
    excluded = [np.eye(4)] if real else [np.eye(4), -np.eye(4)]
    if any(np.max(np.abs(eF - x)) <= tol * scale for x in excluded):
        raise ExcludedCase("e^F = +-I lies outside the classification")
    diff = F - G
    if _norm(diff) <= tol * (1.0 + _norm(F)):
        return ExpEquality(True, 0, None)
    lam = _lambda_any(diff)
    n = int(np.rint(lam.imag / (2 * np.pi)))
    if n == 0 or abs(lam - 2j * np.pi * n) > 1e-6 * (1.0 + abs(lam)):
        raise ArithmeticError("equal exponentials but F - G is not a 2 pi n rotation")
    b_hat = diff / (2 * np.pi * n)
    if abs(abs(_lambda_any(b_hat)) - 1.0) > 1e-8:
        raise ArithmeticError("extracted direction is not a unit rotation")
    fm = F.matrix()
    gm = G.matrix()
    if np.max(np.abs(commutator(fm, gm))) > 1e-6 * (1.0 + np.max(np.abs(fm)) ** 2):
        raise ArithmeticError("operators with equal exponentials fail to commute")
    return ExpEquality(True, n, b_hat)


def check_commutator_eigenvalue(A, B, tol=1e-10):
    """``lambda^2_[A,B] = 4(<A,B>^2 - lambda_A^2 lambda_B^2)``; ``lambda^2`` of the bracket from its matrix square."""
    _same(A, B)
    m = commutator(A.matrix(), B.matrix())
    lhs = np.trace(m @ m) / 4
    rhs = 4 * (inner_chiral(A, B) ** 2 - lambda_sq(A) * lambda_sq(B))
    return residual_check("commutator_eigenvalue", lhs, rhs, tol)


def check_real_commutator_eigenvalue(F, G, tol=1e-10):
    """For real ``F, G``: ``lambda^2_{c[F,G]} = <cF,cG>^2 - lambda_cF^2 lambda_cG^2``."""
    m = commutator(F.matrix(), G.matrix())
    bracket = SkewOp.from_matrix(m, check=False)
    X, Y = c_map(F), c_map(G)
    lhs = lambda_sq(c_map(bracket))
    rhs = inner_chiral(X, Y) ** 2 - lambda_sq(X) * lambda_sq(Y)
    return residual_check("real_commutator_eigenvalue", lhs, rhs, tol)


def check_shared_null(F, N, tol=1e-10):
    """
    For ``N`` null sharing the ``lambda_F`` eigenvector of ``F``:
    ``<F,N> = lambda_F lambda_N``, ``[F,N] = 2 lambda_F N`` and ``FN = lambda_F N``.
    """
    _same(F, N)
    lam = eigenvalue(F)
    # N is null by hypothesis; sqrt of its rounding-level lambda^2 would only add noise
    lam_n = 0.0 if classify(N) is OpClass.NULL else eigenvalue(N)
    f, n = F.matrix(), N.matrix()
    return (
        residual_check("shared_inner", inner_chiral(F, N), lam * lam_n, tol),
        residual_check("shared_bracket", commutator(f, n), 2 * lam * n, tol),
        residual_check("shared_product", f @ n, lam * n, tol),
    )


def check_opposed_null_bracket(F, N, N_dag, tol=1e-10):
    """``[N, N_dag] = (2 <N, N_dag> / lambda_F) F``."""
    _same(F, N, N_dag)
    lhs = commutator(N.matrix(), N_dag.matrix())
    rhs = 2 * inner_chiral(N, N_dag) / eigenvalue(F) * F.matrix()
    return residual_check("opposed_null_bracket", lhs, rhs, tol)


def check_conjugation(F, G, tol=1e-9):
    """``e^-G F e^G = (cosh^2 + sinh^2) F - 2<F,G> sinh^2/lambda^2 G + sinh cosh/lambda [F, G]`` (``lambda = lambda_G``)."""
    _same(F, G)
    mu = lambda_sq(G)
    ch, sc = cosh_coef(mu), sinhc_coef(mu)
    sh_sq = sc**2 * mu
    f, g = F.matrix(), G.matrix()
    lhs = exp_chiral(-G) @ f @ exp_chiral(G)
    rhs = (ch**2 + sh_sq) * f - 2 * inner_chiral(F, G) * sc**2 * g + sc * ch * commutator(f, g)
    return residual_check("conjugation", lhs, rhs, tol)


def check_conjugation_null(F, N, tol=1e-9):
    """For ``N`` null with ``<F,N> = 0`` sharing ``F``'s ``lambda`` eigenvector:
    ``e^-F N e^F = e^{-2 lambda_F} N`` and ``e^-N F e^N = F + 2 lambda_F N``."""
    _same(F, N)
    lam = eigenvalue(F)
    f, n = F.matrix(), N.matrix()
    return (
        residual_check("conjugation_by_generic", exp_chiral(-F) @ n @ exp_chiral(F), np.exp(-2 * lam) * n, tol),
        residual_check("conjugation_by_null", exp_chiral(-N) @ f @ exp_chiral(N), f + 2 * lam * n, tol),
    )


def unit_boost_of(A, C):
    """``E_hat = [A, C] / (2 <A, C>)`` for null ``A, C`` with ``<A, C> != 0``."""
    return bracket_chiral(A, C) / (2 * inner_chiral(A, C))


def check_null_product(A, C, tol=1e-10):
    """
    Product of exponentials of two null operators.

    ``e^A e^C = (1 + <A,C>) I + A + C + <A,C> E_hat`` with ``E_hat`` a unit
    boost orthogonal to ``A`` and ``C``, and the exponent ``D`` of the
    product satisfies ``(sinh lambda_D / lambda_D) D = A + C + i A x C``.
    If ``<A,C> = 0`` then ``AC = 0`` and ``e^A e^C = I + A + C``.
    """
    _same(A, C)
    k = inner_chiral(A, C)
    a, c = A.matrix(), C.matrix()
    lhs = exp_chiral(A) @ exp_chiral(C)
    scale = 1.0 + np.linalg.norm(A.A) * np.linalg.norm(C.A)
    if abs(k) <= 1e-12 * scale:
        return (
            residual_check("null_product_orthogonal", lhs, np.eye(4) + a + c, tol),
            residual_check("null_product_annihilate", a @ c, np.zeros((4, 4)), tol),
        )
    e_hat = unit_boost_of(A, C)
    rhs = (1 + k) * np.eye(4) + a + c + k * e_hat.matrix()
    comp = compose_exponentials(A, C)
    return (
        residual_check("null_product", lhs, rhs, tol),
        residual_check("null_product_unit_boost", lambda_sq(e_hat), 1.0, tol),
        residual_check("null_product_orthogonal_boost", np.array([inner_chiral(e_hat, A), inner_chiral(e_hat, C)]), np.zeros(2), tol),
        residual_check("null_product_vector", comp.scaled_D.A, A.A + C.A + 1j * np.cross(A.A, C.A), tol),
    )


def check_real_closed_form(F, tol=1e-10):
    """Real exponential through ``I, T_F, F`` (rotation, boost or null type) against the factorized exp."""
    return residual_check("real_closed_form", exp_via_t_operator(F), exp_real(F), tol)


def check_t_rotation(F, n=0, tol=1e-9):
    """
    ``T_F = lambda_T exp((2n+1) pi B)`` with ``B = -(i / lambda_cF) F``.

    Only rotation-type ``F`` (imaginary ``lambda_cF``) make ``B`` real;
    ``lambda_T = |lambda_cF|^2 / 2``.
    """
    lam = eigenvalue(F)
    if abs(lam.real) > 1e-12 * (1.0 + abs(lam)) or abs(lam) == 0:
        raise ValueError("check_t_rotation needs lambda_cF purely imaginary and non-zero")
    B = F * (-1j / lam)
    B = SkewOp(np.real(B.E), np.real(B.B))
    lam_t = abs(lam) ** 2 / 2
    return residual_check("t_rotation", t_operator(F), lam_t * exp_real(B * ((2 * n + 1) * np.pi)), tol)


# ---------------------------------------------------------------- sweeps

def gen_unit_rotation(seed, max_rapidity=0.5):
    """Real unit rotation: ``B_n`` about a random axis, seen by a randomly boosted observer."""
    rng = _rng(seed)
    axis = rng.normal(size=3)
    R = SkewOp(np.zeros(3), axis / np.linalg.norm(axis))
    v = rng.normal(size=3)
    boost = exp_real(SkewOp(v / np.linalg.norm(v) * rng.uniform(0, max_rapidity), np.zeros(3)))
    return SkewOp.from_matrix(boost @ R.matrix() @ np.linalg.inv(boost))


def _equality_cases(rng):
    """Yields (name, passed, residual) for constructed exponential-equality instances."""
    n = int(rng.integers(1, 3))
    b_hat = gen_unit_rotation(rng)
    G = b_hat * rng.uniform(0.1, 2.5) + SkewOp(-b_hat.B, b_hat.E) * rng.uniform(-1, 1)
    res = classify_exp_equality(G + b_hat * (2 * np.pi * n), G)
    yield "exp_equality_real", res.equal and res.n == n and res.unit_rotation.allclose(b_hat, 1e-8), 0.0

    X = c_map(b_hat)
    Gc = X * complex(rng.uniform(0.1, 2.5), rng.uniform(-1, 1))
    res = classify_exp_equality(Gc + X * (2 * np.pi * n), Gc)
    yield "exp_equality_chiral", res.equal and res.n == n, 0.0

    A, C = gen_null(rng), gen_null(rng)
    yield "exp_equality_null", not classify_exp_equality(A, C).equal, 0.0


def _instance_checks(rng):
    F, G = gen_generic(rng), gen_generic(rng)
    checks = [
        check_product(F, G),
        check_sandwich(F, G),
        check_anticommutator(F, G),
        *check_composition(F, G),
        check_exp_commutator(F, G),
        check_commutator_eigenvalue(F, G),
        check_real_commutator_eigenvalue(gen_skew(rng), gen_skew(rng)),
        check_conjugation(F, G),
    ]
    Fs, N = gen_shared_pair(rng)
    checks += [*check_shared_null(Fs, N), *check_conjugation_null(Fs, N)]
    checks.append(check_opposed_null_bracket(*gen_opposed_null_pair(rng)))
    checks += list(check_null_product(gen_null(rng), gen_null(rng)))
    checks.append(check_real_closed_form(gen_rotation_type(rng)))
    checks.append(check_real_closed_form(gen_boost_type(rng)))
    rot = gen_rotation_type(rng)
    checks += [check_t_rotation(rot, n) for n in (0, 1, -1)]
    return checks


def run_suite(samples=500, seed=0, tol_override=None):
    """
    Run every identity on ``samples`` seeded instances.

    Returns ``{name: {"max_residual", "tol", "samples", "pass"}}`` plus a
    ``"t_operator_normalization"`` entry comparing the two ``T_F`` scalings.
    """
    summary = {}
    t_samples = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        for c in _instance_checks(rng):
            tol = c.tol if tol_override is None else tol_override
            entry = summary.setdefault(c.name, {"max_residual": 0.0, "tol": tol, "samples": 0, "pass": True})
            entry["max_residual"] = max(entry["max_residual"], c.residual)
            entry["samples"] += 1
            entry["pass"] = entry["pass"] and c.residual <= tol
        for name, ok, residual in _equality_cases(rng):
            entry = summary.setdefault(name, {"max_residual": 0.0, "tol": 0.0, "samples": 0, "pass": True})
            entry["samples"] += 1
            entry["pass"] = entry["pass"] and bool(ok)
        t_samples += [gen_rotation_type(rng), gen_boost_type(rng), gen_null_real(rng)]
    from .expmap import t_normalization_report

    summary["t_operator_normalization"] = t_normalization_report(t_samples)
    return summary


def gen_null_real(seed, max_norm=MAX_NORM):
    """Real null operator: ``|E| = |B|``, ``E . B = 0``."""
    rng = _rng(seed)
    i_hat, j_hat = _orthonormal_pair(rng)
    e = rng.uniform(0.1, max_norm / np.sqrt(2))
    return SkewOp(e * i_hat, e * j_hat)
