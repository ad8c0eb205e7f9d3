#!/usr/bin/env python3
# Quick tour of the projector zoo: build each kind, project a smooth
# function, and print how well the defining conditions are met.

import numpy as np

from nprox.measures import chebyshev_measure, circle_measure
from nprox.points import leja_disk
from nprox.testfunctions import Affine, Exp
from nprox.zoo import (
    kergin_projector,
    lagrange_projector,
    nodes_by_name,
    orthogonal_projector,
    taylor_projector,
)

# a bivariate entire function, exp(0.7 x + 0.4 y)
f2 = Exp(Affine([0.7, 0.4]))
f1 = Exp(Affine([0.9]))

print("Taylor, 2 variables, degree 8, centered at the origin")
P = taylor_projector(2, 8, center=[0.0, 0.0])
p = P.apply(f2)
# the conditions are derivatives of order <= 8 at the center
rhs = P._rhs(f2, None)
resid = np.max(np.abs(P.matrix @ p.coeffs - rhs))
print(f"  condition residual {resid:.2e}")

print("Lagrange at 13 real Leja points")
nodes = nodes_by_name("real_leja", 12)
L = lagrange_projector(nodes)
q = L.apply(f1)
node_err = np.max(np.abs(q.eval_many(nodes.reshape(-1, 1)) - f1.values(nodes.reshape(-1, 1))))
print(f"  worst node residual {node_err:.2e}")

print("Kergin at 7 points of the unit disk")
pts2 = leja_disk(8)[:7]  # Leja sequences are built to truncate well
K = kergin_projector(np.stack([pts2.real, pts2.imag], axis=1))
pk = K.apply(f2, exactness=25)
rhs = K._rhs(f2, 25)
resid = np.max(np.abs(K.matrix @ pk.coeffs - rhs))
print(f"  condition residual {resid:.2e}  (degree {K.degree})")

print("Orthogonal projector, Chebyshev weight, degree 16")
O = orthogonal_projector(chebyshev_measure(64), 16)
po = O.apply(f1)
grid = np.linspace(-1.0, 1.0, 501).reshape(-1, 1)
sup = np.max(np.abs(po.eval_many(grid) - f1.values(grid)))
print(f"  sup error on [-1,1]: {sup:.2e}")

print("Orthogonal projector, uniform measure on the unit circle, degree 10")
Oc = orthogonal_projector(circle_measure(64), 10)
pc = Oc.apply(f1)
theta = np.linspace(0.0, 2 * np.pi, 257)
circ = np.exp(1j * theta).reshape(-1, 1)
sup = np.max(np.abs(pc.eval_many(circ) - f1.values(circ)))
print(f"  sup error on |z|=1: {sup:.2e}")

# every projector reproduces polynomials up to its degree
from nprox.indexing import monomial_count
from nprox.polynomials import Polynomial, coeff_distance

rng = np.random.default_rng(7)
for name, proj in [("taylor", P), ("lagrange", L), ("kergin", K), ("orthogonal", O)]:
    n, d = proj.nvars, proj.degree
    c = rng.standard_normal(monomial_count(n, d)) + 1j * rng.standard_normal(monomial_count(n, d))
    poly = Polynomial(n, d, c)
    gap = coeff_distance(proj.apply(poly), poly)
    print(f"reproduction gap for {name}: {gap:.2e}")
