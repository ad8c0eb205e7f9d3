#!/usr/bin/env python3
# The threshold constant as a function of the density exponent, plus
# empirical densities of some one-dimensional node sequences.

import math

import numpy as np

from nprox.growth import LpNorm, gelfond_constant, omega_density

print("omega     c(omega)")
for omega in (0.25, 0.5, 0.75, 1.0, 1.5, 2.0):
    print(f"{omega:5.2f}   {gelfond_constant(omega):10.6f}")

print(f"\nc(1) - ln 2 = {gelfond_constant(1.0) - math.log(2.0):.2e}")

# density of the nonnegative integers relative to r^omega
norm = LpNorm(math.inf, 1)
pts = np.arange(0, 4001, dtype=float)
print("\nsequence              omega   density")
d = omega_density(pts, norm, 1.0, rmax=2000.0)
print(f"integers               1.0    {d:.4f}")
d = omega_density(pts * 2.0, norm, 1.0, rmax=2000.0)
print(f"even integers          1.0    {d:.4f}")
d = omega_density(pts, norm, 2.0, rmax=2000.0)
print(f"integers               2.0    {d:.6f}")
