"""
Where exp stops being a local diffeomorphism.

At F = 2 pi n (unit rotation) exp(F) = I and four of the six directions are
killed by the differential; only F and its dual survive.  Products of
exponentials behave differently: a factor sitting at 0 restores full rank.
"""

import numpy as np

from lorcal.expmap import compose_jacobian_rank, derivative_matrix, numeric_rank, singularity
from lorcal.oracle import fd_derivative
from lorcal.skew import SkewOp, star

two_pi = 2 * np.pi
for F in (SkewOp([0, 0, 0], [0, 0, two_pi]), SkewOp([0, 0, 0], [0, 0, np.pi]), SkewOp([1, 0, 0], [0, 0, 0])):
    rep = singularity(F)
    print(f"F = {F}: lambda = {rep.lam:.4f}, singular = {rep.is_singular}, n = {rep.n}, rank = {rep.rank}")

F = SkewOp([0, 0, 0], [0, 0, two_pi])
print("\nfinite-difference derivative of exp at 2 pi B_z:")
for G in singularity(F).kernel_basis:
    print(f"  kernel direction {np.round(G.coords(), 3)}: max |d exp| = {np.abs(fd_derivative(F, G)).max():.1e}")
for G in (F / two_pi, star(F) / two_pi):
    print(f"  commuting direction {np.round(G.coords(), 3)}: max |d exp| = {np.abs(fd_derivative(F, G)).max():.2f}")

print("\nrank of the 6x6 differential at random points:",
      sorted({numeric_rank(derivative_matrix(SkewOp.from_coords(x))) for x in np.random.default_rng(1).normal(size=(50, 6))}))

zero = SkewOp.zero()
bx = SkewOp([0, 0, 0], [two_pi, 0, 0])
print("\nproduct map (F1, F2) -> exp(F1) exp(F2):")
print("  rank at (2 pi B_z, 0):       ", compose_jacobian_rank([F, zero]), "(the factor at 0 alone spans everything)")
print("  rank at (2 pi B_z, 2 pi B_x):", compose_jacobian_rank([F, bx]))
