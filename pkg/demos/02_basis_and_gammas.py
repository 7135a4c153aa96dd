"""
Sixteen Hermitian matrices from the chiral boosts, and Dirac matrices from them.

Every entry is 0, +-1 or +-i, so all the algebra below is exact.
"""

import numpy as np

from lorcal import basis16 as b16
from lorcal.minkowski import ETA
from lorcal.oracle import numeric_rank

elements = b16.basis16()
print("basis elements:", ", ".join(b.name for b in elements))
print("rank over the 16 matrix units:", numeric_rank(b16.coordinate_matrix(elements)))
print("failing multiplication rules:", b16.verify_mult_table() or "none")

table = b16.multiplication_table()
names = [b.name for b in elements]
print("\nsome products:")
for i, j in [(4, 8), (8, 4), (5, 9), (4, 5), (1, 2)]:
    k, coeff = table[i][j]
    print(f"  {names[i]} * {names[j]} = {coeff} {names[k]}")

print("\nalphas anticommute with a_i a_j + a_j a_i = k delta_ij I, k =", b16.clifford_normalization())
gammas = b16.clifford_generators(signed=True)
for i in range(4):
    print(f"  gamma_{i}^2 = {np.real(np.diag(gammas[i] @ gammas[i]))[0]:+.0f} I   (metric {ETA[i, i]:+.0f})")
print("gamma relations hold:", b16.gamma_relations_hold())
