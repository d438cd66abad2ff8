"""
Small-lambda branching
======================

As lam -> 0 the state collapses onto l or l+1 depending on whether the
fractional part of l_bar is below or above 1/2; exactly at 1/2 it stays
an equal superposition.
"""

import math

import numpy as np

from thetastate import BranchSpec, StateParams, half_integer_margins, mean_L, small_lambda_L_moments

print("== 1. <L> for l_bar = 1.5 and its neighbours ==")
for lam in (1.0, 0.1, 0.02, 1e-4, 1e-6, 1e-8):
    row = [mean_L(StateParams(lam, lb)) for lb in (1.5 - 1e-6, 1.5, 1.5 + 1e-6)]
    print(f"   lam={lam:<7g} " + "  ".join(f"{v:.6f}" for v in row))
print("   The split only opens once 2e-6 / lam is of order one.")

print("== 2. the two-level model ==")
spec = BranchSpec(1, 0.45)
for lam in (0.1, 0.05, 0.02):
    model = small_lambda_L_moments(spec, lam)
    exact = StateParams(lam, spec.l_bar)
    print(f"   lam={lam}: model <L>={model[0]:.9f}  series <L>={mean_L(exact):.9f}")

print("== 3. the half-integer limits are never reached ==")
for lam in (1.0, 0.1, 0.02):
    mt, ml = half_integer_margins(lam)
    print(f"   lam={lam}: (pi^2/3 - 2) - dtheta^2 = {mt:.3e},  dL^2 - 1/4 = {ml:.3e}")
