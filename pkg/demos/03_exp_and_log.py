"""
Closed-form Lorentz transformations and their logarithm.

exp(F) is computed from exp(cF/2) exp(cbarF/2), each a cosh/sinh formula.
The Taylor-series oracle serves as the reference.
"""

import time

import numpy as np

from lorcal.errors import BranchAmbiguous
from lorcal.expmap import exp_real, is_lorentz, log
from lorcal.identities import gen_skew
from lorcal.oracle import series_exp
from lorcal.skew import SkewOp, eigenvalue

boost = exp_real(SkewOp([1.0, 0, 0], [0, 0, 0]))
print("rapidity-1 boost along x:\n", np.round(boost, 6))
print("cosh 1, sinh 1 =", np.cosh(1), np.sinh(1))

rng = np.random.default_rng(0)
ops = [gen_skew(rng) for _ in range(1000)]
t0 = time.perf_counter()
mats = [exp_real(F) for F in ops]
elapsed = time.perf_counter() - t0
err = max(np.max(np.abs(m - series_exp(F.matrix()))) for F, m in zip(ops, mats))
print(f"\n1000 random fields: worst deviation from the series {err:.2e}, {elapsed * 1e3:.0f} ms")
print("all in the proper orthochronous group:", all(is_lorentz(m) for m in mats))

F = SkewOp([0.3, 0, 0], [0, 0.2, 0])
print("\nlog(exp(F)) for F = 0.3 E_x + 0.2 B_y:", log(exp_real(F)))

# a rotation by pi: two logarithms (+pi and -pi) are equally good
try:
    log(exp_real(SkewOp([0, 0, 0], [0, 0, np.pi])))
except BranchAmbiguous as exc:
    print("rotation by pi:", exc)

# beyond |Im lambda| = pi the principal logarithm is a different operator
F = SkewOp([0, 0, 0], [0, 0, 4.0])
K = log(exp_real(F))
print(f"rotation by 4 rad: log gives B_z = {K.B[2]:.4f} (= 4 - 2 pi), lambda {eigenvalue(K):.4f}")
