"""
Brute-force reference routines used to check the closed forms.

Nothing here calls into :mod:`lorcal.expmap`; the exponential is a plain
truncated Taylor series with scaling and squaring, derivatives are finite
differences, and the logarithm is delegated to ``scipy.linalg.logm``.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BranchCut, NoConvergence


@dataclass(frozen=True)
class OracleConfig:
    series_terms: int = 24
    scaling_threshold: float = 0.5
    fd_step: float = 1e-5
    rank_tol: float = 1e-8

    def __post_init__(self):
        if min(self.series_terms, self.scaling_threshold, self.fd_step, self.rank_tol) <= 0:
            raise ValueError("oracle settings must be positive")


DEFAULT = OracleConfig()


def series_exp(m, cfg=DEFAULT):
    """Taylor series of ``exp`` after scaling ``m`` to max-norm below the threshold."""
    m = np.asarray(m)
    norm = np.max(np.abs(m)) if m.size else 0.0
    k = 0
    while norm / 2**k > cfg.scaling_threshold:
        k += 1
    x = m / 2**k
    out = np.eye(m.shape[0], dtype=np.result_type(m, float))
    term = out.copy()
    for j in range(1, cfg.series_terms + 1):
        term = term @ x / j
        out = out + term
    for _ in range(k):
        out = out @ out
    return out


def fd_derivative(F, G, step=None, cfg=DEFAULT):
    """
    ``d/dt exp(F + tG)`` at ``t = 0`` by central differences with one Richardson step.

    ``F`` and ``G`` may be operators (anything with ``.matrix()``) or plain matrices.
    """
    f = F.matrix() if hasattr(F, "matrix") else np.asarray(F)
    g = G.matrix() if hasattr(G, "matrix") else np.asarray(G)
    h = cfg.fd_step if step is None else step

    def central(t):
        return (series_exp(f + t * g, cfg) - series_exp(f - t * g, cfg)) / (2 * t)

    return (4 * central(h / 2) - central(h)) / 3


def numeric_rank(m, tol=None, cfg=DEFAULT):
    """Number of singular values above ``tol * sigma_max``."""
    s = np.linalg.svd(np.asarray(m), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    tol = cfg.rank_tol if tol is None else tol
    return int(np.sum(s > tol * s[0]))


def eigen(m):
    """Eigenvalues and right eigenvectors (LAPACK ``geev``)."""
    try:
        return np.linalg.eig(np.asarray(m))
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def dense_log(m, branch_tol=1e-9):
    """Principal matrix logarithm; refuses spectra touching the closed negative real axis."""
    m = np.asarray(m)
    w = np.linalg.eigvals(m)
    scale = 1.0 + np.max(np.abs(w))
    if np.any((np.abs(w.imag) <= branch_tol * scale) & (w.real <= branch_tol * scale)):
        raise BranchCut("spectrum meets the closed negative real axis")
    out = scipy.linalg.logm(m)
    if not np.iscomplexobj(m) and np.max(np.abs(np.imag(out))) < 1e-10 * scale:
        out = np.real(out)
    return out
