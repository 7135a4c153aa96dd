"""
Minkowski 4-vectors over R and C.

Vectors are plain numpy arrays of shape ``(4,)`` holding the ``(t, x, y, z)``
components with respect to a fixed orthonormal frame ``e0..e3`` with
``<e0, e0> = -1``.  Complex vectors use the bilinear extension of the metric
(:func:`inner_c`); :func:`inner_hermitian` conjugates the second slot.
"""

from enum import Enum

import numpy as np

from .errors import DegenerateSpan, NotInRestSpace

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
E0, E1, E2, E3 = np.eye(4)

NULL_TOL = 1e-9
OBSERVER_TOL = 1e-10


class NullPlaneType(Enum):
    ALPHA = "alpha"
    BETA = "beta"
    NOT_TOTALLY_NULL = "not_totally_null"


def vec(t, x=0.0, y=0.0, z=0.0):
    """Build a 4-vector; complex if any component is complex."""
    return np.array([t, x, y, z])


def inner_c(v, w):
    """Complex bilinear Minkowski product, signature -+++."""
    v = np.asarray(v)
    w = np.asarray(w)
    return v @ ETA @ w


def inner_hermitian(v, w):
    """Hermitian product ``<<v, w>> = <v, conj(w)>``."""
    return inner_c(v, np.conj(w))


def euclid_sq(v):
    v = np.asarray(v)
    return float(np.real(np.vdot(v, v)))


def is_null(v, tol=NULL_TOL):
    return abs(inner_c(v, v)) <= tol * (1.0 + euclid_sq(v))


def is_observer(u, tol=OBSERVER_TOL):
    u = np.asarray(u)
    if np.iscomplexobj(u) and np.any(np.imag(u) != 0):
        return False
    u = np.real(u)
    return abs(inner_c(u, u) + 1.0) <= tol * (1.0 + euclid_sq(u)) and u[0] > 0


def observer(velocity):
    """Future-pointing unit timelike vector moving with 3-velocity ``velocity`` (|v| < 1)."""
    v = np.asarray(velocity, dtype=float)
    speed_sq = v @ v
    if speed_sq >= 1.0:
        raise ValueError("observer speed must be below 1")
    gamma = 1.0 / np.sqrt(1.0 - speed_sq)
    return gamma * np.concatenate([[1.0], v])


def rest_cross(u, a, b, tol=1e-12):
    """
    Cross product in the rest space of ``u``, oriented so that ``e1 x e2 = e3``.

    Only ``u = e0`` is supported; both factors must have vanishing time
    component.  Complex inputs use the bilinear cross product.
    """
    u = np.asarray(u)
    if not np.allclose(u, E0, atol=tol, rtol=0):
        raise NotImplementedError("rest_cross is only defined for the observer e0")
    a = np.asarray(a)
    b = np.asarray(b)
    for name, x in (("a", a), ("b", b)):
        if abs(inner_c(x, u)) > tol * (1.0 + np.sqrt(euclid_sq(x))):
            raise NotInRestSpace(f"{name} is not orthogonal to the observer")
    out = np.zeros(4, dtype=np.result_type(a, b, float))
    out[1:] = np.cross(a[1:], b[1:])
    return out


def plane_bivector(s, t):
    """Matrix of the skew operator ``v -> s<t, v> - t<s, v>``."""
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    return np.outer(s, ETA @ t) - np.outer(t, ETA @ s)


def classify_null_plane(s, t, tol=NULL_TOL):
    """
    Decide whether ``span{s, t}`` is a totally null plane and, if so, which family.

    The plane bivector of a totally null plane is either self-dual (killed by
    the anti-self-dual projection) or anti-self-dual.  ALPHA is the family of
    ``span{e0 + e1, e2 + i e3}``, whose bivector is self-dual.
    """
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    sv = np.linalg.svd(np.stack([s, t]), compute_uv=False)
    if sv[0] == 0.0 or sv[1] <= 1e-12 * sv[0]:
        raise DegenerateSpan("spanning vectors are linearly dependent")

    ns, nt = euclid_sq(s), euclid_sq(t)
    if (
        abs(inner_c(s, s)) > tol * (1.0 + ns)
        or abs(inner_c(t, t)) > tol * (1.0 + nt)
        or abs(inner_c(s, t)) > tol * (1.0 + np.sqrt(ns * nt))
    ):
        return NullPlaneType.NOT_TOTALLY_NULL

    m = plane_bivector(s, t)
    e = m[1:, 0]
    b = np.array([m[2, 3], m[3, 1], m[1, 2]])
    self_dual = np.linalg.norm(e + 1j * b)
    anti_self_dual = np.linalg.norm(e - 1j * b)
    return NullPlaneType.ALPHA if anti_self_dual < self_dual else NullPlaneType.BETA


def vec_to_json(v):
    v = np.asarray(v, dtype=complex)
    return {"re": v.real.tolist(), "im": v.imag.tolist()}


def vec_from_json(d):
    re = np.asarray(d["re"], dtype=float)
    im = np.asarray(d.get("im", [0.0] * 4), dtype=float)
    if re.shape != (4,) or im.shape != (4,):
        raise ValueError("vector JSON needs 4 real and 4 imaginary components")
    return re + 1j * im
