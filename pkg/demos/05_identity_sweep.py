"""
Seeded sweep over the chiral product, composition and conjugation identities.

Also compares the two candidate normalizations of T_F = k cF cbarF.
"""

from lorcal.identities import run_suite

summary = run_suite(samples=200, seed=42)
report = summary.pop("t_operator_normalization")
width = max(map(len, summary))
for name, v in summary.items():
    status = "ok " if v["pass"] else "BAD"
    print(f"{status} {name:<{width}}  worst {v['max_residual']:.2e}  (tol {v['tol']:.0e}, n={v['samples']})")

print("\nT_F normalization")
for key in ("half", "quarter"):
    r = report[key]
    print(f"  k = {r['scale']}: closed-form residual {r['closed_form_residual']:.2e}, "
          f"2 T_F = F^2 on null F residual {r['null_square_residual']:.2e}")
