"""Smooth test functions with exact partial derivatives of every order.

Functions are small expression trees over constants, affine forms,
exponentials and reciprocals of affine forms, sums and products, plus
polynomial leaves.  Every node can evaluate ``D^alpha f`` exactly at a batch
of complex points, which is what the functional layer consumes.

Trees serialize to a JSON prefix grammar, e.g.::

    ["exp", ["affine", [0.5], 0.0]]          # exp(z/2)
    ["product", ["coord", 0], ["recip", ["affine", [1.0], -2.0]]]

Scalars may be written as numbers or ``[re, im]`` pairs.
"""
from __future__ import annotations

from itertools import product as iter_product
from math import comb, factorial

import numpy as np

from .polynomials import Polynomial


class PoleOnSupportError(ValueError):
    """A reciprocal factor was evaluated on (or too close to) its pole set."""

    def __init__(self, coeffs, const, point):
        self.coeffs = np.asarray(coeffs)
        self.const = complex(const)
        self.point = np.asarray(point)
        super().__init__(
            f"pole locus {{z : {self._locus()} = 0}} meets the evaluation set "
            f"near point {self.point}"
        )

    def _locus(self):
        terms = " + ".join(f"({c})*z{v}" for v, c in enumerate(self.coeffs))
        return f"{terms} + ({self.const})"


def _as_points(pts, nvars):
    arr = np.asarray(pts, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(-1, nvars) if nvars > 1 else arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[1] != nvars:
        raise ValueError(f"expected points of shape (m, {nvars})")
    return arr


def _zero_alpha(nvars):
    return (0,) * nvars


class TestFunction:
    """Base class; concrete nodes implement :meth:`deriv_values`."""

    nvars: int

    def deriv_values(self, alpha, pts) -> np.ndarray:
        raise NotImplementedError

    def values(self, pts) -> np.ndarray:
        return self.deriv_values(_zero_alpha(self.nvars), pts)

    def eval(self, point) -> complex:
        return complex(self.values(_as_points(point, self.nvars))[0])

    def deriv_eval(self, alpha, point) -> complex:
        return complex(self.deriv_values(alpha, _as_points(point, self.nvars))[0])

    def poles(self):
        """Affine forms ``(coeffs, const)`` whose zero sets are poles of self."""
        return []

    def to_tree(self):
        raise NotImplementedError

    def __add__(self, other):
        return Sum([self, _coerce(other, self.nvars)])

    __radd__ = __add__

    def __mul__(self, other):
        return Product([self, _coerce(other, self.nvars)])

    __rmul__ = __mul__


def _coerce(obj, nvars):
    if isinstance(obj, TestFunction):
        return obj
    return Const(nvars, complex(obj))


def _check_alpha(alpha, nvars):
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != nvars or any(a < 0 for a in alpha):
        raise ValueError(f"bad derivative order {alpha} for {nvars} variables")
    return alpha


class Const(TestFunction):
    def __init__(self, nvars, value):
        self.nvars = int(nvars)
        self.value = complex(value)

    def deriv_values(self, alpha, pts):
        alpha = _check_alpha(alpha, self.nvars)
        pts = _as_points(pts, self.nvars)
        fill = self.value if sum(alpha) == 0 else 0.0
        return np.full(pts.shape[0], fill, dtype=np.complex128)

    def to_tree(self):
        return ["const", _scalar_tree(self.value)]


class Affine(TestFunction):
    """The affine form ``coeffs . z + const``."""

    def __init__(self, coeffs, const=0.0):
        self.coeffs = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
        self.const = complex(const)
        self.nvars = self.coeffs.shape[0]
        if self.nvars == 0:
            raise ValueError("affine form needs at least one variable")

    def deriv_values(self, alpha, pts):
        alpha = _check_alpha(alpha, self.nvars)
        pts = _as_points(pts, self.nvars)
        order = sum(alpha)
        if order == 0:
            return pts @ self.coeffs + self.const
        if order == 1:
            v = alpha.index(1)
            return np.full(pts.shape[0], self.coeffs[v], dtype=np.complex128)
        return np.zeros(pts.shape[0], dtype=np.complex128)

    def to_tree(self):
        return ["affine", [_scalar_tree(c) for c in self.coeffs], _scalar_tree(self.const)]


def coordinate(nvars, index):
    coeffs = np.zeros(nvars)
    coeffs[index] = 1.0
    return Affine(coeffs, 0.0)


class Exp(TestFunction):
    """``exp(u)`` for an affine form u; derivatives stay closed form."""

    def __init__(self, affine: Affine):
        if not isinstance(affine, Affine):
            raise TypeError("Exp expects an affine argument")
        self.arg = affine
        self.nvars = affine.nvars

    def deriv_values(self, alpha, pts):
        alpha = _check_alpha(alpha, self.nvars)
        pts = _as_points(pts, self.nvars)
        scale = np.prod([self.arg.coeffs[v] ** a for v, a in enumerate(alpha)])
        return scale * np.exp(pts @ self.arg.coeffs + self.arg.const)

    def to_tree(self):
        return ["exp", self.arg.to_tree()]


class Recip(TestFunction):
    """``1 / u`` for an affine form u, with explicit pole detection."""

    def __init__(self, affine: Affine):
        if not isinstance(affine, Affine):
            raise TypeError("Recip expects an affine argument")
        self.arg = affine
        self.nvars = affine.nvars
        self._scale = 1.0 + float(np.sum(np.abs(affine.coeffs)) + abs(affine.const))

    def deriv_values(self, alpha, pts):
        alpha = _check_alpha(alpha, self.nvars)
        pts = _as_points(pts, self.nvars)
        u = pts @ self.arg.coeffs + self.arg.const
        bad = np.abs(u) < 1e-12 * self._scale
        if np.any(bad):
            idx = int(np.argmax(bad))
            raise PoleOnSupportError(self.arg.coeffs, self.arg.const, pts[idx])
        order = sum(alpha)
        coef = np.prod([self.arg.coeffs[v] ** a for v, a in enumerate(alpha)])
        sign = (-1.0) ** order
        return sign * float(factorial(order)) * coef * u ** (-(order + 1))

    def poles(self):
        return [(self.arg.coeffs.copy(), self.arg.const)]

    def to_tree(self):
        return ["recip", self.arg.to_tree()]


class Sum(TestFunction):
    def __init__(self, terms):
        terms = list(terms)
        if not terms:
            raise ValueError("empty sum")
        self.terms = terms
        self.nvars = terms[0].nvars
        if any(t.nvars != self.nvars for t in terms):
            raise ValueError("mixed variable counts in sum")

    def deriv_values(self, alpha, pts):
        pts = _as_points(pts, self.nvars)
        out = np.zeros(pts.shape[0], dtype=np.complex128)
        for t in self.terms:
            out += t.deriv_values(alpha, pts)
        return out

    def poles(self):
        return [p for t in self.terms for p in t.poles()]

    def to_tree(self):
        return ["sum"] + [t.to_tree() for t in self.terms]


class Product(TestFunction):
    """Product of factors differentiated via the general Leibniz rule."""

    def __init__(self, factors):
        factors = list(factors)
        if not factors:
            raise ValueError("empty product")
        self.factors = factors
        self.nvars = factors[0].nvars
        if any(f.nvars != self.nvars for f in factors):
            raise ValueError("mixed variable counts in product")

    def deriv_values(self, alpha, pts):
        alpha = _check_alpha(alpha, self.nvars)
        pts = _as_points(pts, self.nvars)
        return self._leibniz(self.factors, alpha, pts)

    def _leibniz(self, factors, alpha, pts):
        if len(factors) == 1:
            return factors[0].deriv_values(alpha, pts)
        head, rest = factors[0], factors[1:]
        out = np.zeros(pts.shape[0], dtype=np.complex128)
        for beta in iter_product(*(range(a + 1) for a in alpha)):
            coef = 1
            for a, b in zip(alpha, beta):
                coef *= comb(a, b)
            remainder = tuple(a - b for a, b in zip(alpha, beta))
            out += coef * head.deriv_values(beta, pts) * self._leibniz(rest, remainder, pts)
        return out

    def poles(self):
        return [p for f in self.factors for p in f.poles()]

    def to_tree(self):
        return ["product"] + [f.to_tree() for f in self.factors]


class PolynomialFunction(TestFunction):
    """A polynomial wrapped as a test function (derivatives are exact)."""

    def __init__(self, poly: Polynomial):
        self.poly = poly
        self.nvars = poly.nvars

    def deriv_values(self, alpha, pts):
        alpha = _check_alpha(alpha, self.nvars)
        return self.poly.derivative(alpha).eval_many(_as_points(pts, self.nvars))

    def to_tree(self):
        return ["poly", self.poly.to_json()]


# -- prefix grammar ----------------------------------------------------------


def _scalar_tree(value):
    value = complex(value)
    if value.imag == 0.0:
        return value.real
    return [value.real, value.imag]


def _parse_scalar(obj):
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2 and all(
        isinstance(x, (int, float)) for x in obj
    ):
        return complex(obj[0], obj[1])
    raise ValueError(f"not a scalar: {obj!r}")


def parse_function(tree, nvars: int) -> TestFunction:
    """Build a :class:`TestFunction` from its prefix-grammar tree."""
    if isinstance(tree, (int, float)):
        return Const(nvars, float(tree))
    if not isinstance(tree, (list, tuple)) or not tree:
        raise ValueError(f"malformed function tree: {tree!r}")
    head = tree[0]
    if not isinstance(head, str):
        raise ValueError(f"malformed function tree: {tree!r}")
    if head == "const":
        return Const(nvars, _parse_scalar(tree[1]))
    if head == "coord":
        return coordinate(nvars, int(tree[1]))
    if head == "affine":
        coeffs = [_parse_scalar(c) for c in tree[1]]
        if len(coeffs) != nvars:
            raise ValueError(
                f"affine form has {len(coeffs)} coefficients but nvars={nvars}"
            )
        const = _parse_scalar(tree[2]) if len(tree) > 2 else 0.0
        return Affine(coeffs, const)
    if head in ("exp", "recip"):
        arg = parse_function(tree[1], nvars)
        arg = _to_affine(arg)
        return Exp(arg) if head == "exp" else Recip(arg)
    if head == "sum":
        return Sum([parse_function(t, nvars) for t in tree[1:]])
    if head == "product":
        return Product([parse_function(t, nvars) for t in tree[1:]])
    if head == "poly":
        return PolynomialFunction(Polynomial.from_json(tree[1]))
    raise ValueError(f"unknown function node {head!r}")


def _to_affine(node: TestFunction) -> Affine:
    if isinstance(node, Affine):
        return node
    if isinstance(node, Const):
        return Affine(np.zeros(node.nvars), node.value)
    raise ValueError("exp/recip arguments must be affine forms")
