"""
The periodic Gaussian state
===========================

Two theta forms of the same amplitude, and its angular-momentum distribution.
"""

import math

import numpy as np

from thetastate import Representation, StateParams, prob_dist, psi

params = StateParams(lam=0.5, l_bar=0.45, theta_bar=0.3)
print("state:", params)
print("   normalization N =", params.norm)

theta = np.linspace(-math.pi, math.pi, 9)
lattice = psi(params, theta, Representation.LATTICE_THETA)
fourier = psi(params, theta, Representation.FOURIER_THETA)
print("== 1. both forms agree ==")
print("   max |difference| =", np.max(np.abs(lattice - fourier)))

print("== 2. |psi|^2 on the window ==")
for t, v in zip(theta, np.abs(lattice) ** 2):
    print(f"   theta={t:+.3f}  |psi|^2={v:.6f}")

print("== 3. p(l) ==")
dist = prob_dist(params)
for l in range(-2, 4):
    print(f"   p({l:+d}) = {dist[l]:.6e}")
print("   total:", math.fsum(dist.weights), " mass outside the window <=", dist.tail_mass_bound)

print("== 4. half-integer l_bar puts a node at the window edge ==")
print("   |psi(pi)| at l_bar=0.5:", abs(psi(StateParams(1.0, 0.5), math.pi)))
