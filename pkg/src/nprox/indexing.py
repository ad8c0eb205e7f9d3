"""Graded lexicographic multi-index bookkeeping for dense polynomial storage.

Multi-indices over ``nvars`` variables are ordered by total degree first and
lexicographically within a degree, with the first variable most significant:
in two variables the order starts 1, x, y, x^2, xy, y^2.  All dense
coefficient arrays in this package follow this order.
"""
from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

# Largest basis we agree to materialize; beyond this the dense representation
# stops being a desk-scale object and we fail loudly instead of thrashing.
DESK_LIMIT = 2_500_000


def monomial_count(nvars: int, degree: int) -> int:
    """Number of monomials in ``nvars`` variables of total degree <= ``degree``."""
    if nvars < 1:
        raise ValueError("nvars must be a positive integer")
    if degree < 0:
        return 0
    count = comb(nvars + degree, nvars)
    if count > DESK_LIMIT:
        raise ValueError(
            f"monomial basis of size {count} exceeds the supported desk scale"
        )
    return count


@lru_cache(maxsize=None)
def _degree_block(nvars: int, degree: int) -> np.ndarray:
    """Exponent rows of total degree exactly ``degree``, descending lex."""
    if nvars == 1:
        out = np.array([[degree]], dtype=np.int32)
    else:
        parts = []
        for lead in range(degree, -1, -1):
            tail = _degree_block(nvars - 1, degree - lead)
            block = np.empty((tail.shape[0], nvars), dtype=np.int32)
            block[:, 0] = lead
            block[:, 1:] = tail
            parts.append(block)
        out = np.vstack(parts)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def exponents(nvars: int, degree: int) -> np.ndarray:
    """All exponent rows of degree <= ``degree`` in graded-lex order.

    Returns a read-only int32 array of shape ``(monomial_count, nvars)``.
    """
    monomial_count(nvars, degree)  # desk-scale guard
    blocks = [_degree_block(nvars, j) for j in range(degree + 1)]
    out = np.vstack(blocks)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def degrees_of(nvars: int, degree: int) -> np.ndarray:
    """Total degree of each graded-lex rank, as a read-only int array."""
    out = exponents(nvars, degree).sum(axis=1, dtype=np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def degree_starts(nvars: int, degree: int) -> tuple[int, ...]:
    """Start offset of each degree block; entry ``degree + 1`` is the total."""
    return tuple(monomial_count(nvars, j - 1) for j in range(degree + 2))


def rank_of(alpha) -> int:
    """Graded-lex rank of a multi-index, zero based."""
    alpha = tuple(int(a) for a in alpha)
    if not alpha or any(a < 0 for a in alpha):
        raise ValueError(f"not a multi-index: {alpha!r}")
    nvars = len(alpha)
    deg = sum(alpha)
    rank = comb(nvars + deg - 1, nvars) if deg > 0 else 0
    remaining = deg
    for v in range(nvars - 1):
        slots = nvars - v - 2
        for lead in range(remaining, alpha[v], -1):
            rank += comb(remaining - lead + slots, slots)
        remaining -= alpha[v]
    return rank


@lru_cache(maxsize=None)
def _rank_table(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    rows = exponents(nvars, degree)
    return {tuple(int(x) for x in row): i for i, row in enumerate(rows)}


def ranks_of_rows(nvars: int, degree: int, rows: np.ndarray) -> np.ndarray:
    """Vector of graded-lex ranks for an array of exponent rows."""
    table = _rank_table(nvars, degree)
    return np.fromiter(
        (table[tuple(int(x) for x in row)] for row in rows),
        dtype=np.int64,
        count=len(rows),
    )


@lru_cache(maxsize=None)
def factor_ranks(n1: int, n2: int, degree: int):
    """Factor-space ranks of every product-space rank of degree <= ``degree``.

    Row ``i`` of ``exponents(n1 + n2, degree)`` splits into a left block of
    ``n1`` variables and a right block of ``n2``; the return value is the pair
    of rank vectors of those blocks in their own graded-lex bases (both taken
    with degree bound ``degree``).
    """
    E = exponents(n1 + n2, degree)
    r1 = ranks_of_rows(n1, degree, E[:, :n1])
    r2 = ranks_of_rows(n2, degree, E[:, n1:])
    r1.setflags(write=False)
    r2.setflags(write=False)
    return r1, r2


@lru_cache(maxsize=None)
def split_ranks(n1: int, d1: int, n2: int, d2: int):
    """Decomposition of product-space ranks into factor ranks.

    For the graded-lex basis in ``n1 + n2`` variables of degree ``d1 + d2``,
    returns ``(mask, r1, r2)``: ``mask`` flags rows whose left block has
    degree <= d1 and right block degree <= d2, and ``r1``/``r2`` are the
    factor-space ranks of the masked rows.
    """
    E = exponents(n1 + n2, d1 + d2)
    left = E[:, :n1]
    right = E[:, n1:]
    mask = (left.sum(axis=1) <= d1) & (right.sum(axis=1) <= d2)
    r1 = ranks_of_rows(n1, d1, left[mask])
    r2 = ranks_of_rows(n2, d2, right[mask])
    mask = mask.copy()
    mask.setflags(write=False)
    r1.setflags(write=False)
    r2.setflags(write=False)
    return mask, r1, r2
