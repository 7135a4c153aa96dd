"""
The field of an accelerated charge on its light cone.

At distance r in direction w the field is a Coulomb boost (q/r^2) E_w plus a
null radiative part (q/r) N_a, and equals the Coulomb field conjugated by
exp(r N_a).  The radiative part dominates far away.
"""

import numpy as np

from lorcal.emfield import ChargeState, fibonacci_sphere, field_at, sample_cone, verify_conjugation_form
from lorcal.skew import c_map, eigenvalue

s = ChargeState(q=1.0, r=1.0, w=[0, 0, 1], a=[1, 0, 0])
d = field_at(s)
print("q = 1, r = 1, w = z, a = x:")
print("  E =", d.F_a.E, " B =", d.F_a.B)
full, half = verify_conjugation_form(s)
print(f"  conjugation residual {full.residual:.1e}, half-step residual {half.residual:.1e}")
print(f"  eigenvalue on u + w: {eigenvalue(c_map(d.F_a)):.6f} (q / r^2 = 1)")

print("\nfield strength vs distance along w = y, a = x:")
for r in (0.1, 1.0, 10.0, 100.0):
    F = field_at(ChargeState(1.0, r, [0, 1, 0], [1, 0, 0]))
    coulomb, rad = np.linalg.norm(F.E_coul.E), np.linalg.norm(F.N_a.E) / r
    print(f"  r = {r:>6}: |Coulomb E| = {coulomb:.2e}, |radiative E| = {rad:.2e}")

rows = sample_cone(1.0, [0.5, 0, 0], [1.0], fibonacci_sphere(6))
print("\ncone sample at r = 1 (lambda^2 is q^2/r^4 in every direction):")
for row in rows:
    print(f"  w = {np.round(row['w'], 3)}  lambda^2 = {row['lambda_sq'].real:.6f}  {row['class']}")
