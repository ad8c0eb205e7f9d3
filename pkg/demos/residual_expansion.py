#!/usr/bin/env python3
"""The product projector on separable inputs, term by term.

Two facts make products of Newton-structured projectors computable without
ever assembling the big collocation system.  First, on a separable function
f1 (x) f2 the product projection is the sum of tensor products of the
factors' Newton summands over i1 + i2 <= d.  Second, when both inputs are
polynomials the factors reproduce, the leftover is the finite sum over the
complementary index pairs, an exact expansion of the residual with no
analysis in it.
"""

import numpy as np

from nprox.points import chebyshev_nodes, leja_greedy
from nprox.polynomials import Polynomial, coeff_distance, tensor_product
from nprox.testfunctions import Affine, Exp, Product
from nprox.zoo import lagrange_projector, taylor_projector


def separable_agreement():
    nodes = leja_greedy(chebyshev_nodes(8), 9)
    left = lagrange_projector(nodes)
    right = taylor_projector(1, 8, center=[0.25])
    prod = left.newton_product(right)

    f1 = Exp(Affine([0.6]))
    f2 = Exp(Affine([-0.3]))
    joint = Product([Exp(Affine([0.6, 0.0])), Exp(Affine([0.0, -0.3]))])

    direct = prod.apply(joint)
    via_summands = prod.apply_product_formula(f1, f2)
    gap = coeff_distance(direct, via_summands)
    print(f"separable input, direct vs summand formula: {gap:.2e}")


def exact_residual():
    rng = np.random.default_rng(3)
    nodes = leja_greedy(chebyshev_nodes(6), 7)
    left = lagrange_projector(nodes)
    right = lagrange_projector(nodes)
    prod = left.newton_product(right)

    # polynomial factors of degrees 5 and 4, inside the factor degrees
    p1 = Polynomial(1, 5, rng.standard_normal(6))
    p2 = Polynomial(1, 4, rng.standard_normal(5))

    terms, bset = prod.residual_expansion(p1, p2)
    print(f"residual index set {bset!r} with {bset.cardinality()} pairs:")
    print("  " + " ".join(f"({i},{j})" for i, j in bset))

    # summing the terms reproduces the residual exactly
    big = tensor_product(p1, p2)
    residual = big - prod.apply(big).embedded(big.degree)
    total = Polynomial.zero(2, big.degree)
    for _, _, term in terms:
        total = total + term.embedded(big.degree)
    print(f"sum of terms vs actual residual: {coeff_distance(total, residual):.2e}")


if __name__ == "__main__":
    separable_agreement()
    exact_residual()
