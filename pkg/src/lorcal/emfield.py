"""
Field of an accelerated point charge on its future light cone.

Units are Gaussian with c = 1 and the charge's observer is ``e0``.  At the
cone point ``z = r u + r w`` the field splits as

    F_a = (q / r^2) E_w + (q / r) N_a,

a Coulomb boost along ``w`` plus a null operator with ``E = -a_perp`` and
``B = a_perp x w``.  Both share the null eigenvector ``u + w``, and
``F_a`` is the Coulomb field conjugated by ``exp(r N_a)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidState
from .expmap import exp_chiral, exp_real
from .identities import residual_check
from .minkowski import E0
from .skew import SkewOp, c_map, classify, lambda_sq


@dataclass(frozen=True, eq=False)
class ChargeState:
    q: float
    r: float
    w: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", np.asarray(self.w, dtype=float).reshape(3))
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float).reshape(3))
        if not np.isfinite(self.r) or self.r <= 0:
            raise InvalidState("retarded distance r must be positive")
        if abs(self.w @ self.w - 1.0) > 1e-12:
            raise InvalidState("w must be a unit vector")

    @property
    def u(self):
        return E0.copy()

    @property
    def a_perp(self):
        return self.a - (self.a @ self.w) * self.w


@dataclass(frozen=True, eq=False)
class FieldDecomposition:
    F_a: SkewOp
    E_coul: SkewOp
    N_a: SkewOp
    shared_eigenvector: np.ndarray


def field_at(s):
    q, r, w, ap = s.q, s.r, s.w, s.a_perp
    E_coul = SkewOp(q / r**2 * w, np.zeros(3))
    N_a = SkewOp(-ap, np.cross(ap, w))
    F_a = SkewOp(q * (w / r**2 - ap / r), q / r * np.cross(ap, w))
    return FieldDecomposition(F_a, E_coul, N_a, np.concatenate([[1.0], w]))


def verify_conjugation_form(s, tol=1e-9, half_tol=1e-10):
    """
    Check ``F_a = exp(-r N_a) E_coul exp(r N_a)`` and the chiral half-step
    ``exp(-(r/2) cN_a) cE_coul exp((r/2) cN_a) = cE_coul + (q/r) cN_a``.

    The full check uses the tolerance ``tol * (1 + ||F_a||)``.
    """
    d = field_at(s)
    lhs = exp_real(-s.r * d.N_a) @ d.E_coul.matrix() @ exp_real(s.r * d.N_a)
    full = residual_check("conjugation_form", d.F_a.matrix(), lhs, tol * (1.0 + float(np.max(np.abs(d.F_a.matrix())))))
    cN = c_map(d.N_a)
    cE = c_map(d.E_coul)
    half = exp_chiral(-(s.r / 2) * cN) @ cE.matrix() @ exp_chiral((s.r / 2) * cN)
    half_check = residual_check("conjugation_half_step", half, (cE + (s.q / s.r) * cN).matrix(), half_tol)
    return full, half_check


def sample_cone(q, a, r_grid, w_grid):
    """
    Tabulate the field over cone points ``(r, w)``.

    Rows: ``(r, w, E, B, lambda^2 of cF_a, class of F_a)``.
    """
    rows = []
    for r in r_grid:
        if r <= 0:
            raise InvalidState("cone sampling needs r > 0")
        for w in w_grid:
            w = np.asarray(w, dtype=float)
            F = field_at(ChargeState(q, r, w / np.linalg.norm(w), a)).F_a
            rows.append({
                "r": float(r),
                "w": w / np.linalg.norm(w),
                "E": F.E,
                "B": F.B,
                "lambda_sq": lambda_sq(c_map(F)),
                "class": classify(F).value,
            })
    return rows


def fibonacci_sphere(n):
    """``n`` roughly uniform unit vectors (golden-angle spiral)."""
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    phi = np.pi * (1 + 5**0.5) * k
    rho = np.sqrt(1 - z**2)
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


def gen_state(seed):
    """Random charge state: ``q`` in [-2, 2], ``r`` in [0.1, 10], random ``w`` and ``|a| <= 2``."""
    rng = np.random.default_rng(seed)
    w = rng.normal(size=3)
    return ChargeState(
        q=rng.uniform(-2, 2),
        r=rng.uniform(0.1, 10),
        w=w / np.linalg.norm(w),
        a=rng.normal(size=3) * rng.uniform(0, 2) / np.sqrt(3),
    )

