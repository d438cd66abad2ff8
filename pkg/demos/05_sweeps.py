"""
Sweeps, figures and inversion
=============================

The same data the command line writes as CSV.
"""

import math

from thetastate import StateParams, padgett_state_moments, uncertainty_report
from thetastate import sweep as sw

records, flags = sw.sweep(l_bar=0.0, points=8)
print("== 1. sweep at l_bar=0 ==")
for r in records:
    print(f"   lam={r.lam:9.4f}  dtheta={r.delta_theta:.5f}  dL={r.delta_L:.5f}  product={r.product:.5f}")

print("== 2. equal angular spread, full state vs single Gaussian ==")
for target in (0.5, 1.0, 1.5):
    lam_full = sw.find_lambda_for_dtheta(target, 0.0)
    lam_single = sw.find_lambda_for_dtheta(
        target, dtheta=lambda l: padgett_state_moments(l).delta_theta)
    full = uncertainty_report(StateParams(lam_full, 0.0)).product
    single = padgett_state_moments(lam_single).product
    print(f"   dtheta={target}: full {full:.6f}  single {single:.6f}")

print("== 3. inversion ==")
lam = sw.find_lambda_for_dtheta(1 / math.sqrt(40), 0.0)
print("   dtheta = 1/sqrt(40) at lam =", lam)

print("== 4. CSV ==")
print(sw.records_to_csv(records[:2], flags[:2], {"lbar": "0.0"}), end="")
