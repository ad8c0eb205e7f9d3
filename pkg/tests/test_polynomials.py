"""Polynomial core: ordering, arithmetic, evaluation, calculus.

Oracles used here:
  * naive monomial-sum evaluation (explicit loop over exponent rows),
  * central finite differences for derivatives,
  * exhaustive rank/enumerate round trips.
"""
import numpy as np
import pytest

from nprox.indexing import (
    degree_starts,
    degrees_of,
    exponents,
    monomial_count,
    rank_of,
    split_ranks,
)
from nprox.polynomials import Polynomial, coeff_distance, multiply, tensor_product


def naive_eval(poly, point):
    """Oracle: sum coefficient * prod(point**exponent) term by term."""
    total = 0j
    for c, row in zip(poly.coeffs, exponents(poly.nvars, poly.degree)):
        term = c
        for v in range(poly.nvars):
            term *= point[v] ** int(row[v])
        total += term
    return total


def random_poly(rng, nvars, degree):
    n = monomial_count(nvars, degree)
    coeffs = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return Polynomial(nvars, degree, coeffs)


def test_monomial_count_values():
    assert monomial_count(2, 2) == 6
    assert monomial_count(3, 0) == 1
    assert monomial_count(1, 7) == 8
    assert monomial_count(2, -1) == 0


def test_graded_lex_first_ranks():
    # 1, x, y, x^2, xy, y^2
    assert rank_of((0, 0)) == 0
    assert rank_of((1, 0)) == 1
    assert rank_of((0, 1)) == 2
    assert rank_of((2, 0)) == 3
    assert rank_of((1, 1)) == 4
    assert rank_of((0, 2)) == 5


def test_rank_enumerate_round_trip_exhaustive():
    for nvars in range(1, 5):
        for degree in range(0, 9):
            rows = exponents(nvars, degree)
            assert rows.shape == (monomial_count(nvars, degree), nvars)
            for i, row in enumerate(rows):
                assert rank_of(tuple(row)) == i
            # degrees are non-decreasing and blocks are aligned
            degs = degrees_of(nvars, degree)
            starts = degree_starts(nvars, degree)
            for j in range(degree + 1):
                block = degs[starts[j]:starts[j + 1]]
                assert np.all(block == j)


def test_desk_scale_guard():
    with pytest.raises(ValueError):
        monomial_count(8, 40)


def test_eval_matches_naive_sum():
    rng = np.random.default_rng(7)
    for nvars, degree in [(1, 9), (2, 5), (3, 4)]:
        p = random_poly(rng, nvars, degree)
        pts = rng.standard_normal((6, nvars)) + 1j * rng.standard_normal((6, nvars))
        got = p.eval_many(pts)
        want = np.array([naive_eval(p, pt) for pt in pts])
        assert np.allclose(got, want, rtol=1e-12, atol=1e-12)


def test_eval_accepts_real_points_and_single_point():
    p = Polynomial.monomial(2, (1, 1))
    assert p.eval([2.0, 3.0]) == pytest.approx(6.0)
    vals = p.eval_many(np.array([[2.0, 3.0], [1.0, -1.0]]))
    assert np.allclose(vals, [6.0, -1.0])


def test_multiply_is_pointwise_product():
    rng = np.random.default_rng(11)
    for nvars, d1, d2 in [(1, 6, 4), (2, 3, 4), (3, 2, 3)]:
        p = random_poly(rng, nvars, d1)
        q = random_poly(rng, nvars, d2)
        pq = multiply(p, q)
        assert pq.degree == d1 + d2
        pts = rng.standard_normal((8, nvars)) + 1j * rng.standard_normal((8, nvars))
        assert np.allclose(
            pq.eval_many(pts), p.eval_many(pts) * q.eval_many(pts), rtol=1e-12, atol=1e-11
        )


def test_multiply_monomials_adds_exponents():
    p = Polynomial.monomial(2, (1, 2), 2.0)
    q = Polynomial.monomial(2, (0, 3), -1.5)
    pq = multiply(p, q)
    assert pq.coeff((1, 5)) == pytest.approx(-3.0)
    assert np.count_nonzero(pq.coeffs) == 1


def test_addition_promotes_degree_bounds():
    p = Polynomial.monomial(1, (3,))
    q = Polynomial.constant(1, 1.0)
    s = p + q
    assert s.degree == 3
    assert s.coeff((0,)) == 1.0 and s.coeff((3,)) == 1.0
    assert (p - p).effective_degree() == -1


def test_derivative_against_finite_differences():
    rng = np.random.default_rng(3)
    h = 1e-5
    for nvars, degree, alpha in [(1, 6, (2,)), (2, 5, (1, 1)), (3, 4, (0, 1, 1))]:
        p = random_poly(rng, nvars, degree)
        d = p.derivative(alpha)
        point = rng.standard_normal(nvars) * 0.4
        # central differences, one direction at a time
        def fd(f, pt, var):
            e = np.zeros(nvars)
            e[var] = h
            return (f(pt + e) - f(pt - e)) / (2 * h)

        def apply_fd(pt):
            fns = [lambda q: p.eval(q)]
            for v, a in enumerate(alpha):
                for _ in range(a):
                    prev = fns[-1]
                    fns.append(lambda q, prev=prev, v=v: fd(prev, q, v))
            return fns[-1](pt)

        assert d.eval(point) == pytest.approx(apply_fd(point), rel=2e-5, abs=2e-5)


def test_derivative_exact_on_monomials():
    p = Polynomial.monomial(2, (3, 2), 1.0)
    d = p.derivative((1, 2))
    # D^(1,2) x^3 y^2 = 3 * 2 * x^2 = 6 x^2
    assert d.coeff((2, 0)) == pytest.approx(6.0)
    assert np.count_nonzero(d.coeffs) == 1
    assert p.derivative((4, 0)).effective_degree() == -1


def test_derivative_order_zero_is_identity():
    p = Polynomial.monomial(2, (2, 1), 5.0)
    assert coeff_distance(p.derivative((0, 0)), p) == 0.0


def test_tensor_product_coefficients_factor():
    rng = np.random.default_rng(5)
    p = random_poly(rng, 1, 3)
    q = random_poly(rng, 2, 2)
    t = tensor_product(p, q)
    assert t.nvars == 3 and t.degree == 5
    E = exponents(3, 5)
    for row in E:
        a, b = (int(row[0]),), (int(row[1]), int(row[2]))
        want = p.coeff(a) * q.coeff(b)
        assert t.coeff(tuple(row)) == pytest.approx(want, rel=1e-13, abs=1e-13)
    # evaluation factorizes as well
    z = rng.standard_normal((4, 1)) + 0.2j
    w = rng.standard_normal((4, 2))
    joined = np.hstack([z, w])
    assert np.allclose(t.eval_many(joined), p.eval_many(z) * q.eval_many(w))


def test_split_ranks_cover_factor_pairs():
    mask, r1, r2 = split_ranks(1, 2, 1, 2)
    assert mask.sum() == 9  # all pairs (i, j), i, j <= 2
    assert len(r1) == len(r2) == 9


def test_truncate_and_embed():
    p = Polynomial.monomial(1, (4,)) + Polynomial.monomial(1, (1,), 2.0)
    t = p.truncated(2)
    assert t.degree == 2 and t.coeff((1,)) == 2.0
    e = t.embedded(5)
    assert e.degree == 5 and e.coeff((1,)) == 2.0


def test_json_round_trip():
    rng = np.random.default_rng(13)
    p = random_poly(rng, 2, 3)
    q = Polynomial.from_json(p.to_json())
    assert q.nvars == p.nvars and q.degree == p.degree
    assert coeff_distance(p, q) == 0.0


def test_immutability():
    p = Polynomial.monomial(1, (1,))
    with pytest.raises(AttributeError):
        p.degree = 7
    with pytest.raises(ValueError):
        p.coeffs[0] = 5.0
