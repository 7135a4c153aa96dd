"""
The Hermitian basis of M4(C) built from the chiral boosts, and Clifford generators.

All matrices here have entries in {0, +-1, +-i}, so products are exact in
floating point and every check uses exact equality.
"""

from dataclasses import dataclass

import numpy as np

from .minkowski import ETA
from .skew import c_map, cbar_map, so31_basis


def _chiral_boosts():
    boosts = so31_basis()[:3]
    c = {ax: c_map(F).matrix() for ax, F in zip("xyz", boosts)}
    cb = {ax: cbar_map(F).matrix() for ax, F in zip("xyz", boosts)}
    return c, cb


# row-major order of the 4x4 table; ("c", "x") is cE_x, ("c", "x", "y") is cE_x cbarE_y
LABELS = (
    ("I",), ("c", "x", "x"), ("c", "y", "y"), ("c", "z", "z"),
    ("c", "x"), ("cbar", "x"), ("c", "y", "z"), ("c", "z", "y"),
    ("c", "y"), ("cbar", "y"), ("c", "x", "z"), ("c", "z", "x"),
    ("c", "z"), ("cbar", "z"), ("c", "x", "y"), ("c", "y", "x"),
)


@dataclass(frozen=True, eq=False)
class BasisElement:
    label: tuple
    matrix: np.ndarray

    @property
    def name(self):
        if self.label == ("I",):
            return "I"
        if len(self.label) == 2:
            return f"{self.label[0]}E_{self.label[1]}"
        return f"cE_{self.label[1]} cbarE_{self.label[2]}"


def basis16():
    """The sixteen products in table order: ``I``, the chiral boosts and their mixed products."""
    c, cb = _chiral_boosts()
    out = []
    for label in LABELS:
        if label == ("I",):
            m = np.eye(4, dtype=complex)
        elif len(label) == 2:
            m = (c if label[0] == "c" else cb)[label[1]]
        else:
            m = c[label[1]] @ cb[label[2]]
        out.append(BasisElement(label, m))
    return out


def coordinate_matrix(elements=None):
    """16x16 matrix whose rows are the elements flattened over the ``e_ij`` basis."""
    elements = basis16() if elements is None else elements
    return np.array([b.matrix.ravel() for b in elements])


def is_gaussian_unit_valued(m):
    """True if every entry is one of 0, +-1, +-i."""
    allowed = np.array([0, 1, -1, 1j, -1j])
    return bool(np.all(np.any(np.isclose(m.ravel()[:, None], allowed[None, :], rtol=0, atol=0), axis=1)))


def verify_mult_table():
    """
    Check the multiplication rules of the chiral boosts exactly.

    Returns the names of failing relations; an empty list means all hold.
    """
    c, cb = _chiral_boosts()
    failures = []
    for a, b, k in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
        if not np.array_equal(c[a] @ c[b], 1j * c[k]):
            failures.append(f"cE_{a} cE_{b} = i cE_{k}")
        if not np.array_equal(cb[a] @ cb[b], -1j * cb[k]):
            failures.append(f"cbarE_{a} cbarE_{b} = -i cbarE_{k}")
    for a in "xyz":
        for b in "xyz":
            if a != b:
                if not np.array_equal(c[a] @ c[b], -(c[b] @ c[a])):
                    failures.append(f"cE_{a} cE_{b} = -cE_{b} cE_{a}")
                if not np.array_equal(cb[a] @ cb[b], -(cb[b] @ cb[a])):
                    failures.append(f"cbarE_{a} cbarE_{b} = -cbarE_{b} cbarE_{a}")
            if not np.array_equal(c[a] @ cb[b], cb[b] @ c[a]):
                failures.append(f"cE_{a} cbarE_{b} = cbarE_{b} cE_{a}")
    return failures


def clifford_generators(signed=False):
    """
    ``alpha_0..alpha_3`` (``signed=False``) or ``gamma_0..gamma_3`` (``signed=True``).

    The alphas anticommute and square to ``I``; the gammas satisfy
    ``g_i g_j + g_j g_i = 2 eta_ij I``.
    """
    c, cb = _chiral_boosts()
    gens = [c["x"], c["y"], c["z"] @ cb["x"], c["z"] @ cb["y"]]
    if signed:
        gens[0] = 1j * gens[0]
    return gens


def anticommutator_table(gens):
    n = len(gens)
    return [[gens[i] @ gens[j] + gens[j] @ gens[i] for j in range(n)] for i in range(n)]


def clifford_normalization():
    """
    Which constant ``k`` makes ``a_i a_j + a_j a_i = k delta_ij I`` hold for the alphas.

    Returns ``None`` if no single constant works.
    """
    table = anticommutator_table(clifford_generators())
    k = table[0][0][0, 0]
    ok = all(
        np.array_equal(table[i][j], (k if i == j else 0) * np.eye(4))
        for i in range(4) for j in range(4)
    )
    return complex(k).real if ok else None


def gamma_relations_hold():
    gens = clifford_generators(signed=True)
    table = anticommutator_table(gens)
    return all(
        np.array_equal(table[i][j], 2 * ETA[i, j] * np.eye(4))
        for i in range(4) for j in range(4)
    )


def gamma_products():
    """All 16 ordered products of distinct gammas (including the empty product)."""
    gens = clifford_generators(signed=True)
    out = []
    for mask in range(16):
        m = np.eye(4, dtype=complex)
        for i in range(4):
            if mask >> i & 1:
                m = m @ gens[i]
        out.append(m)
    return out


def pauli_subalgebra():
    """``I, cE_x, cE_y, cE_x cE_y``: spans a 4-dimensional algebra closed under products."""
    c, _ = _chiral_boosts()
    return [np.eye(4, dtype=complex), c["x"], c["y"], c["x"] @ c["y"]]


def decompose(m, elements=None):
    """Coordinates of ``m`` in the sixteen-element basis."""
    coords = coordinate_matrix(elements)
    return np.linalg.solve(coords.T, np.asarray(m, dtype=complex).ravel())


def multiplication_table():
    """
    ``table[i][j] = (k, coeff)`` with ``b_i b_j = coeff * b_k``.

    Every product of two basis elements is a unit multiple of a single basis element.
    """
    elements = basis16()
    table = []
    for bi in elements:
        row = []
        for bj in elements:
            x = decompose(bi.matrix @ bj.matrix, elements)
            nz = np.flatnonzero(np.abs(x) > 1e-12)
            if len(nz) != 1:
                raise ArithmeticError("product is not a multiple of one basis element")
            k = int(nz[0])
            coeff = complex(np.round(x[k].real) + 1j * np.round(x[k].imag))
            if not np.array_equal(bi.matrix @ bj.matrix, coeff * elements[k].matrix):
                raise ArithmeticError("rounded coefficient does not reproduce the product")
            row.append((k, coeff))
        table.append(row)
    return table


def table_json():
    elements = basis16()
    return {
        "labels": [b.name for b in elements],
        "matrices": [
            {"re": b.matrix.real.tolist(), "im": b.matrix.imag.tolist()} for b in elements
        ],
        "products": [
            [{"index": k, "coeff": [coeff.real, coeff.imag]} for k, coeff in row]
            for row in multiplication_table()
        ],
    }
