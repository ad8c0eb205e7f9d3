"""Monomial moments and cubature on the unit simplex.

The unit simplex in R^k is ``T_k = {t : t_i >= 0, sum t_i <= 1}`` and all
integrals here are plain Lebesgue integrals over it (no volume
normalization).  Moments have the closed form

    int_{T_k} t^beta dt = (prod_i beta_i!) / (|beta| + k)!

evaluated through log-gamma so large degrees do not overflow.  Cubature uses
the Grundmann-Moller combinatorial construction, which is exact for
polynomials of degree 2s+1 and reuses the graded-lex enumeration machinery
for its point sets.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .indexing import degree_starts, exponents


def simplex_monomial_moment(beta) -> float:
    beta = np.asarray(beta, dtype=np.int64).reshape(-1)
    if beta.size == 0:
        return 1.0  # zero-dimensional simplex: the integral is a point value
    if np.any(beta < 0):
        raise ValueError("moment exponents must be nonnegative")
    k = beta.size
    return float(np.exp(np.sum(gammaln(beta + 1)) - gammaln(beta.sum() + k + 1)))


def simplex_moment_vector(ndim: int, degree: int) -> np.ndarray:
    """Moments of every graded-lex monomial of degree <= ``degree`` on T_ndim."""
    E = exponents(ndim, degree)
    logs = gammaln(E + 1.0).sum(axis=1) - gammaln(E.sum(axis=1) + ndim + 1.0)
    return np.exp(logs)


@lru_cache(maxsize=None)
def grundmann_moller_rule(ndim: int, s: int):
    """Nodes and weights exact to degree ``2s + 1`` on the unit simplex.

    Returns ``(nodes, weights)`` with nodes of shape ``(Q, ndim)``.  Weights
    alternate in sign; they sum to the simplex volume ``1 / ndim!``.
    """
    if ndim < 1:
        raise ValueError("ndim must be >= 1")
    if s < 0:
        raise ValueError("s must be >= 0")
    d = 2 * s + 1
    # beta runs over all barycentric multi-indices with |beta| = s - i; the
    # graded-lex table over ndim + 1 slots holds every block we need.
    table = exponents(ndim + 1, s)
    starts = degree_starts(ndim + 1, s)
    node_blocks = []
    weight_blocks = []
    for i in range(s + 1):
        k = s - i
        block = table[starts[k]:starts[k + 1]]
        denom = d + ndim - 2 * i
        logw = (
            d * np.log(denom)
            - 2 * s * np.log(2.0)
            - gammaln(i + 1.0)
            - gammaln(d + ndim - i + 1.0)
        )
        w = (-1.0) ** i * np.exp(logw)
        node_blocks.append((2.0 * block[:, 1:] + 1.0) / denom)
        weight_blocks.append(np.full(block.shape[0], w))
    nodes = np.vstack(node_blocks)
    weights = np.concatenate(weight_blocks)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def rule_order_for_exactness(exactness: int) -> int:
    """Smallest Grundmann-Moller ``s`` whose rule reaches ``exactness``."""
    return max(0, int(exactness) // 2)
