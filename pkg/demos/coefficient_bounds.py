#!/usr/bin/env python3
"""Coefficient bounds for polynomials from maximum modulus on norm spheres.

For a polynomial f and a multi-index alpha, the coefficient of z^alpha is
bounded by t^(-|alpha|) M(f, t) / delta(alpha), where M is the maximum
modulus on the sphere of radius t and delta(alpha) is the largest value
|z^alpha| takes there.  The script checks the bound on random polynomials
under several norms and shows it is tight for a pure monomial evaluated at
the extremal radius.
"""

import math

import numpy as np

from nprox.growth import CombinedNorm, GrowthParams, LpNorm, growth_norm_monomial, power_series_coeff_bound
from nprox.indexing import exponents, monomial_count
from nprox.polynomials import Polynomial

rng = np.random.default_rng(11)

norms = [
    ("l1 on C^2", LpNorm(1, 2)),
    ("l2 on C^2", LpNorm(2, 2)),
    ("linf on C^3", LpNorm(math.inf, 3)),
    ("linf(2) x l2(1)", CombinedNorm(LpNorm(math.inf, 2), LpNorm(2, 1))),
]

print("bound / |coeff| for random degree-5 polynomials (larger is slacker)")
for label, norm in norms:
    n = norm.nvars
    size = monomial_count(n, 5)
    f = Polynomial(n, 5, rng.standard_normal(size) + 1j * rng.standard_normal(size))
    alphas = exponents(n, 5)
    worst = math.inf
    ok = True
    for alpha in alphas[1:]:
        a = tuple(int(v) for v in alpha)
        if abs(f.coeff(a)) < 1e-12:
            continue
        bound, holds = power_series_coeff_bound(f, a, norm, t=1.3)
        ok = ok and holds
        worst = min(worst, bound / abs(f.coeff(a)))
    print(f"  {label:18s} tightest ratio {worst:8.3f}   all hold: {ok}")

# a pure monomial at the extremal radius makes the bound exact
norm = LpNorm(2, 2)
alpha = (3, 2)
mono = Polynomial.monomial(2, alpha)
params = GrowthParams(omega=1.5, A=0.8, norm=norm)
t_star = (sum(alpha) / (params.omega * params.A)) ** (1.0 / params.omega)
bound, holds = power_series_coeff_bound(mono, alpha, norm, t=t_star)
print(f"\nmonomial z1^3 z2^2, l2 norm, t = {t_star:.4f}")
print(f"  bound = {bound:.12f} (exact value 1), holds: {holds}")

# the same extremal radius maximizes the weighted sup against the growth
val = growth_norm_monomial(alpha, params)
print(f"  weighted extremal sup under exp(-0.8 r^1.5) growth: {val:.6f}")
