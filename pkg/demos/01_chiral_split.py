"""
Splitting an electromagnetic field into its two chiral halves.

A field F = (E, B) maps to A = E + iB.  The chiral operator cF squares to
(A.A) I, so one complex number lambda decides everything: zero, null
(lambda = 0, a single light-like eigendirection) or generic (two).
"""

import numpy as np

from lorcal.skew import SkewOp, c_map, cbar_map, classify, eigenvalue, null_eigenvectors, star

fields = {
    "pure electric (boost)": SkewOp([1.0, 0, 0], [0, 0, 0]),
    "pure magnetic (rotation)": SkewOp([0, 0, 0], [0, 0, 1.0]),
    "plane wave (null)": SkewOp([1.0, 0, 0], [0, 1.0, 0]),
    "mixed": SkewOp([0.3, -1.0, 0.5], [1.2, 0.4, 0.0]),
}

for name, F in fields.items():
    X = c_map(F)
    print(f"{name}: E={F.E}, B={F.B}")
    print(f"  star F      = E{star(F).E}, B{star(F).B}")
    print(f"  A = E + iB  = {X.A}")
    print(f"  (cF)^2 - lambda^2 I vanishes: {np.allclose(X.matrix() @ X.matrix(), (X.A @ X.A) * np.eye(4))}")
    print(f"  lambda      = {eigenvalue(F):.4f}   class = {classify(F).value}")
    for s in null_eigenvectors(F):
        print(f"  light-like eigendirection (t, x, y, z) = {np.round(s.real, 4)}")
    # the two halves add back to the field
    assert np.allclose(X.matrix() + cbar_map(F).matrix(), 2 * F.matrix())
    print()
