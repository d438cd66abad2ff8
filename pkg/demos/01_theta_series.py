"""
Evaluating the theta_3 series
=============================

How many terms the series needs, and what the log-scale argument is for.
"""

import math

import numpy as np

from thetastate import theta3, truncation_bound

print("== 1. truncation windows ==")
for q in (0.1, 0.5, math.exp(-math.pi), 0.9):
    plan = truncation_bound(q, 1e-15)
    print(f"   q={q:.4f}: keep |n| <= {plan.n_max:3d}, certified tail <= {plan.tail_bound:.2e}")

print("== 2. a value you can check by hand ==")
# 1 + 2 q + 2 q^4 + 2 q^9 + ...
print("   theta3(0, 0.1) =", theta3(0.0, 0.1))

print("== 3. complex argument and vectorized input ==")
z = np.array([0.0, 0.5, 0.5 + 0.3j])
print("   theta3(z, 0.3) =", theta3(z, 0.3))

print("== 4. log_scale keeps huge values representable ==")
# theta3(i y / 2, e^{-1}) ~ e^{y^2 / 4}: for y = 60 that is e^{900}.
y = 60.0
scaled = theta3(1j * y / 2, math.exp(-1.0), log_scale=-y * y / 4)
print(f"   e^(-900) * theta3(30i, 1/e) = {scaled.real:.12f}")
