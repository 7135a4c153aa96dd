"""
Skew-symmetric operators on Minkowski space and their chiral halves.

A :class:`SkewOp` is stored as its electric and magnetic parts ``(E, B)``;
the 4x4 matrix is

    [[0, E^T],
     [E, xB ]]        with (xB) v = v x B.

The duality star sends ``(E, B)`` to ``(-B, E)``.  The maps ``c = 1 - i*``
and ``cbar = 1 + i*`` split so(3,1) (x) C into two commuting sectors; an
element of either sector is a :class:`ChiralOp`, determined by the complex
3-vector ``A = X e0`` and a chirality tag.  Every chiral operator squares
to ``(A . A) I`` with the bilinear dot product.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import MixedChirality, ZeroOperator
from .minkowski import ETA

NULL_TOL = 1e-9


def cross_matrix(v):
    """Matrix of ``w -> v x w``."""
    x, y, z = v
    return np.array([[0, -z, y], [z, 0, -x], [-y, x, 0]], dtype=np.result_type(v, float))


def _vec3(v):
    v = np.asarray(v)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    if np.iscomplexobj(v):
        return v.astype(complex)
    return v.astype(float)


def _block_matrix(e, b):
    m = np.zeros((4, 4), dtype=np.result_type(e, b, float))
    m[0, 1:] = e
    m[1:, 0] = e
    # (xB) v = v x B = -(B x v)
    m[1:, 1:] = -cross_matrix(b)
    return m


@dataclass(frozen=True, eq=False)
class SkewOp:
    """Element of so(3,1), or of its complexification when E, B are complex."""

    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "E", _vec3(self.E))
        object.__setattr__(self, "B", _vec3(self.B))

    @classmethod
    def zero(cls):
        return cls(np.zeros(3), np.zeros(3))

    @classmethod
    def from_coords(cls, x):
        x = np.asarray(x)
        return cls(x[:3], x[3:])

    @classmethod
    def from_matrix(cls, m, check=True, tol=1e-9):
        """
        Read ``(E, B)`` off a 4x4 matrix after projecting onto the metric-skew part.

        With ``check`` the projection residual must be below ``tol`` (relative).
        """
        m = np.asarray(m)
        k = 0.5 * (m - ETA @ m.T @ ETA)
        if check and np.max(np.abs(m - k)) > tol * (1.0 + np.max(np.abs(m))):
            raise ValueError("matrix is not skew with respect to the Minkowski metric")
        e = k[1:, 0]
        b = np.array([k[2, 3], k[3, 1], k[1, 2]])
        if not np.iscomplexobj(m):
            return cls(e.real, b.real)
        return cls(e, b)

    @property
    def is_real(self):
        return not (np.iscomplexobj(self.E) or np.iscomplexobj(self.B))

    def coords(self):
        return np.concatenate([self.E, self.B])

    def matrix(self):
        return _block_matrix(self.E, self.B)

    def norm(self):
        return float(np.linalg.norm(self.coords()))

    def __add__(self, other):
        return SkewOp(self.E + other.E, self.B + other.B)

    def __sub__(self, other):
        return SkewOp(self.E - other.E, self.B - other.B)

    def __neg__(self):
        return SkewOp(-self.E, -self.B)

    def __mul__(self, k):
        return SkewOp(k * self.E, k * self.B)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return SkewOp(self.E / k, self.B / k)

    def allclose(self, other, atol=1e-12):
        return np.allclose(self.coords(), other.coords(), rtol=0, atol=atol)

    def to_json(self):
        if not self.is_real:
            raise ValueError("only real operators have a JSON form")
        return {"E": self.E.tolist(), "B": self.B.tolist()}

    @classmethod
    def from_json(cls, d):
        for key in ("E", "B"):
            if key not in d:
                raise ValueError(f"operator JSON is missing field {key!r}")
            if len(d[key]) != 3:
                raise ValueError(f"field {key!r} must have 3 components")
        return cls(np.asarray(d["E"], dtype=float), np.asarray(d["B"], dtype=float))

    def __repr__(self):
        return f"SkewOp(E={self.E.tolist()}, B={self.B.tolist()})"


class Chirality(Enum):
    C = "c"
    CBAR = "cbar"

    @property
    def sign(self):
        """``+1`` for the c sector, ``-1`` for cbar; the sector has ``F* = sign * i * F``."""
        return 1 if self is Chirality.C else -1


@dataclass(frozen=True, eq=False)
class ChiralOp:
    """Element of cS (chirality C) or cbar S (chirality CBAR)."""

    A: np.ndarray
    chirality: Chirality = Chirality.C

    def __post_init__(self):
        object.__setattr__(self, "A", np.asarray(self.A, dtype=complex).reshape(3))
        object.__setattr__(self, "chirality", Chirality(self.chirality))

    def matrix(self):
        # c(E, B) has magnetic part -iA, cbar(E, B) has +iA
        return _block_matrix(self.A, -1j * self.chirality.sign * self.A)

    def as_skew(self):
        """The same operator viewed as a complex element of so(3,1) (x) C."""
        return SkewOp(self.A, -1j * self.chirality.sign * self.A)

    def _check(self, other):
        if self.chirality is not other.chirality:
            raise MixedChirality("operators belong to different chiral sectors")

    def __add__(self, other):
        self._check(other)
        return ChiralOp(self.A + other.A, self.chirality)

    def __sub__(self, other):
        self._check(other)
        return ChiralOp(self.A - other.A, self.chirality)

    def __neg__(self):
        return ChiralOp(-self.A, self.chirality)

    def __mul__(self, k):
        return ChiralOp(k * self.A, self.chirality)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return ChiralOp(self.A / k, self.chirality)

    def allclose(self, other, atol=1e-12):
        return self.chirality is other.chirality and np.allclose(self.A, other.A, rtol=0, atol=atol)

    def to_json(self):
        return {
            "A_re": self.A.real.tolist(),
            "A_im": self.A.imag.tolist(),
            "chirality": self.chirality.value,
        }

    @classmethod
    def from_json(cls, d):
        return cls(np.asarray(d["A_re"]) + 1j * np.asarray(d["A_im"]), Chirality(d["chirality"]))

    def __repr__(self):
        return f"ChiralOp(A={self.A.tolist()}, chirality={self.chirality.value})"


class OpClass(Enum):
    ZERO = "zero"
    NULL = "null"
    GENERIC = "generic"


def star(F):
    """Hodge dual ``(E, B) -> (-B, E)``."""
    return SkewOp(-F.B, F.E)


def c_map(F):
    """``cF = F - i F*``, returned as a C-chirality operator with ``A = E + iB``."""
    return ChiralOp(F.E + 1j * F.B, Chirality.C)


def cbar_map(F):
    """``cbar F = F + i F*``, with ``A = E - iB``."""
    return ChiralOp(F.E - 1j * F.B, Chirality.CBAR)


def c_apply(F):
    """``F - i F*`` as a (complex) :class:`SkewOp`, for arbitrary complex input."""
    return F - 1j * star(F)


def cbar_apply(F):
    return F + 1j * star(F)


def dot(a, b):
    """Bilinear (unconjugated) dot product of complex 3-vectors."""
    return complex(np.sum(np.asarray(a) * np.asarray(b)))


def branch_sqrt(z, tol=1e-12):
    """Square root with ``Re >= 0``; on the imaginary axis ``Im >= 0``."""
    r = np.sqrt(complex(z))
    if abs(r.real) <= tol * (1.0 + abs(r)):
        r = complex(0.0, abs(r.imag))
    return r


def lambda_sq(X):
    return dot(X.A, X.A)


def eigenvalue(X):
    """Eigenvalue ``lambda`` of a chiral operator: ``X^2 = lambda^2 I`` on the fixed branch."""
    if isinstance(X, SkewOp):
        X = c_map(X)
    return branch_sqrt(lambda_sq(X))


def inner_chiral(X, Y):
    """``<X, Y> = A_X . A_Y``; equals half the scalar part of ``XY + YX``."""
    if X.chirality is not Y.chirality:
        raise MixedChirality("inner product needs operators of the same chirality")
    return dot(X.A, Y.A)


def classify(F, tol=NULL_TOL):
    A = c_map(F).A if isinstance(F, SkewOp) else F.A
    norm_sq = float(np.real(np.vdot(A, A)))
    if norm_sq == 0.0:
        return OpClass.ZERO
    if abs(dot(A, A)) <= tol * (1.0 + norm_sq):
        return OpClass.NULL
    return OpClass.GENERIC


def commutator(a, b):
    return a @ b - b @ a


def bracket(F, G):
    """Lie bracket ``[F, G]`` of two (possibly complex) skew operators."""
    return SkewOp.from_matrix(commutator(F.matrix(), G.matrix()), check=False)


def bracket_chiral(X, Y):
    """
    Bracket of chiral operators: ``A = 2i A_X x A_Y`` in cS, ``-2i A_X x A_Y`` in cbar S.

    Operators of opposite chirality commute, so their bracket is the zero
    operator (tagged with the chirality of ``X``).
    """
    if X.chirality is not Y.chirality:
        return ChiralOp(np.zeros(3), X.chirality)
    return ChiralOp(2j * X.chirality.sign * np.cross(X.A, Y.A), X.chirality)


def so31_basis():
    """``E_x, E_y, E_z, B_x, B_y, B_z``."""
    eye = np.eye(3)
    zero = np.zeros(3)
    return [SkewOp(eye[i], zero) for i in range(3)] + [SkewOp(zero, eye[i]) for i in range(3)]


def ad_matrix(F):
    """6x6 matrix of ``G -> [F, G]`` in the basis of :func:`so31_basis`."""
    cols = [bracket(F, G).coords() for G in so31_basis()]
    return np.array(cols).T


def ad_chiral(X):
    """3x3 complex matrix of ``A -> A_[X, Y]`` on the sector of ``X``."""
    return 2j * X.chirality.sign * cross_matrix(X.A)


def null_eigenvectors(F, tol=NULL_TOL):
    """
    Real null eigendirections of a real operator, normalized to ``t = 1``.

    Generic operators return ``[s_plus, s_minus]`` with ``cF s = +-lambda s``;
    null operators return the single direction with ``cF s = 0``.  Each
    direction is the common kernel of ``F - Re(mu)`` and ``F* + Im(mu)``,
    which is where ``cF`` acts as ``mu``.
    """
    if not F.is_real:
        raise ValueError("null_eigenvectors needs a real operator")
    kind = classify(F, tol)
    if kind is OpClass.ZERO:
        raise ZeroOperator("every null vector is an eigenvector of the zero operator")
    m, ms = F.matrix(), star(F).matrix()
    lam = eigenvalue(F)
    mus = [lam, -lam] if kind is OpClass.GENERIC else [0j]
    out = []
    for mu in mus:
        stacked = np.vstack([m - mu.real * np.eye(4), ms + mu.imag * np.eye(4)])
        _, _, vt = np.linalg.svd(stacked)
        s = vt[-1]
        out.append(s / s[0])
    return out
