#!/usr/bin/env python3
# Geometric convergence of Chebyshev interpolation for 1/(x-2) on [-1,1].
# The error decays like rho^(-d) where rho = 2 + sqrt(3) is the parameter
# of the largest Bernstein ellipse avoiding the pole.

import numpy as np

from nprox.extremal import fit_decay_rate
from nprox.points import chebyshev_nodes
from nprox.testfunctions import Affine, Recip
from nprox.zoo import lagrange_projector

f = Recip(Affine([1.0], -2.0))
grid = np.linspace(-1.0, 1.0, 2001).reshape(-1, 1)

degrees = list(range(2, 41, 2))
errors = []
for d in degrees:
    proj = lagrange_projector(np.sort(chebyshev_nodes(d)), cond_threshold=None)
    p = proj.apply(f)
    err = float(np.max(np.abs(p.eval_many(grid) - f.values(grid))))
    errors.append(err)
    print(f"d = {d:2d}   sup error = {err:.3e}")

rate, stderr, tail = fit_decay_rate(degrees, errors)
expected = 1.0 / (2.0 + np.sqrt(3.0))
print(f"\nfitted rate      {rate:.8f}")
print(f"expected 1/rho   {expected:.8f}")
print(f"relative gap     {abs(rate - expected) / expected:.2e}")
