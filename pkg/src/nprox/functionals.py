"""Linear functionals acting on polynomials and smooth test functions.

Five kinds are supported: point evaluation, derivative evaluation, simplex
mean-value conditions on derivative data (the Kergin conditions), weighted
inner products against a basis polynomial, and tensor pairs acting on a
joined variable block.

Every functional evaluates *exactly* on polynomials: ``apply_to_polynomial``
reduces to a dot product against the functional's values on the graded-lex
monomial basis, and those values come from closed forms (point powers,
falling factorials, simplex moments) rather than quadrature.  Applied to a
test function, a functional first discretizes itself into weighted point
derivatives -- the simplex conditions through Grundmann-Moller cubature of a
requested exactness -- and then drives the function's exact derivative
evaluator.
"""
from __future__ import annotations

import numpy as np

from .indexing import exponents, factor_ranks, monomial_count
from .measures import QuadratureMeasure, parse_measure
from .polynomials import Polynomial, multiply
from .simplex import grundmann_moller_rule, rule_order_for_exactness, simplex_moment_vector
from .testfunctions import TestFunction

# Covers smooth desk-scale integrands; the projector engine passes
# 2 * degree + 5 explicitly instead of relying on this.
DEFAULT_EXACTNESS = 25


def _point_array(point):
    return np.asarray(point, dtype=np.complex128).reshape(-1)


def _point_json(point):
    return [[float(z.real), float(z.imag)] for z in _point_array(point)]


def _point_from_json(obj):
    return np.array([complex(re, im) for re, im in obj], dtype=np.complex128)


class Functional:
    """Base class; concrete kinds implement ``_monomial_values`` and friends."""

    nvars: int

    def __init__(self):
        self._mono_cache: tuple[int, np.ndarray] | None = None

    # -- exact action on polynomials ------------------------------------

    def on_monomials(self, degree: int) -> np.ndarray:
        """Values on every graded-lex monomial of degree <= ``degree``."""
        cached = self._mono_cache
        if cached is None or cached[0] < degree:
            self._mono_cache = (degree, self._monomial_values(degree))
        return self._mono_cache[1][: monomial_count(self.nvars, degree)]

    def _monomial_values(self, degree: int) -> np.ndarray:
        raise NotImplementedError

    def apply_to_polynomial(self, poly: Polynomial) -> complex:
        if poly.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return complex(np.dot(poly.coeffs, self.on_monomials(poly.degree)))

    # -- action on smooth functions --------------------------------------

    def discretize(self, exactness: int):
        """Weighted point-derivative batches ``(weights, points, alpha)``."""
        raise NotImplementedError

    def apply_to_function(self, f: TestFunction, exactness: int | None = None) -> complex:
        if f.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        if exactness is None:
            exactness = DEFAULT_EXACTNESS
        total = 0j
        for weights, pts, alpha in self.discretize(exactness):
            total += np.dot(weights, f.deriv_values(alpha, pts))
        return complex(total)

    def __call__(self, obj, exactness: int | None = None) -> complex:
        if isinstance(obj, Polynomial):
            return self.apply_to_polynomial(obj)
        if isinstance(obj, TestFunction):
            return self.apply_to_function(obj, exactness)
        raise TypeError(f"cannot apply a functional to {type(obj).__name__}")

    def to_json(self) -> dict:
        raise NotImplementedError


class PointEval(Functional):
    def __init__(self, point):
        super().__init__()
        self.point = _point_array(point)
        self.nvars = self.point.shape[0]

    def _monomial_values(self, degree):
        E = exponents(self.nvars, degree)
        vals = np.ones(E.shape[0], dtype=np.complex128)
        for v in range(self.nvars):
            vals *= self.point[v] ** E[:, v]
        return vals

    def discretize(self, exactness):
        return [(np.array([1.0 + 0j]), self.point[None, :], (0,) * self.nvars)]

    def to_json(self):
        return {"type": "point_eval", "point": _point_json(self.point)}

    def __repr__(self):
        return f"PointEval({self.point})"


def _falling_factors(E_minus_alpha, alpha):
    """prod_v gamma_v! / (gamma_v - alpha_v)! for rows gamma - alpha."""
    out = np.ones(E_minus_alpha.shape[0], dtype=np.float64)
    for v, a in enumerate(alpha):
        for t in range(1, a + 1):
            out *= E_minus_alpha[:, v] + t
    return out


class DerivativeEval(Functional):
    def __init__(self, alpha, point):
        super().__init__()
        self.point = _point_array(point)
        self.nvars = self.point.shape[0]
        self.alpha = tuple(int(a) for a in alpha)
        if len(self.alpha) != self.nvars or any(a < 0 for a in self.alpha):
            raise ValueError(f"bad derivative order {alpha}")

    def _monomial_values(self, degree):
        E = exponents(self.nvars, degree)
        alpha = np.asarray(self.alpha, dtype=np.int64)
        mask = np.all(E >= alpha, axis=1)
        F = np.maximum(E - alpha, 0)
        vals = _falling_factors(F, self.alpha).astype(np.complex128)
        for v in range(self.nvars):
            vals *= self.point[v] ** F[:, v]
        vals[~mask] = 0.0
        return vals

    def discretize(self, exactness):
        return [(np.array([1.0 + 0j]), self.point[None, :], self.alpha)]

    def to_json(self):
        return {
            "type": "derivative_eval",
            "alpha": list(self.alpha),
            "point": _point_json(self.point),
        }

    def __repr__(self):
        return f"DerivativeEval(alpha={self.alpha}, point={self.point})"


class KerginCondition(Functional):
    """Unnormalized simplex mean of ``D^alpha f`` along interpolation nodes.

    With ``j = |alpha|`` and nodes ``z_0 .. z_j`` the functional is

        f -> int_{T_j} (D^alpha f)(z_0 + sum_i t_i (z_i - z_0)) dt,

    the plain Lebesgue integral over the unit simplex (so level-j conditions
    carry a natural 1/j! volume factor).
    """

    def __init__(self, alpha, nodes):
        super().__init__()
        self.alpha = tuple(int(a) for a in alpha)
        nodes = np.asarray(nodes, dtype=np.complex128)
        if nodes.ndim == 1:
            nodes = nodes.reshape(-1, 1)
        self.nodes = nodes
        self.nvars = nodes.shape[1]
        if len(self.alpha) != self.nvars or any(a < 0 for a in self.alpha):
            raise ValueError(f"bad derivative order {alpha}")
        if nodes.shape[0] != sum(self.alpha) + 1:
            raise ValueError(
                f"order {sum(self.alpha)} condition needs {sum(self.alpha) + 1} "
                f"nodes, got {nodes.shape[0]}"
            )

    @property
    def order(self) -> int:
        return sum(self.alpha)

    def _monomial_values(self, degree):
        j = self.order
        if j == 0:
            return PointEval(self.nodes[0])._monomial_values(degree)
        E = exponents(self.nvars, degree)
        alpha = np.asarray(self.alpha, dtype=np.int64)
        mask = np.all(E >= alpha, axis=1)
        F = np.maximum(E - alpha, 0)
        fall = _falling_factors(F, self.alpha)
        moments = simplex_moment_vector(j, max(degree - j, 0))
        # affine substitution t -> z0 + sum t_i (z_i - z0), one form per
        # ambient variable, expanded exactly as degree-1 polynomials in t
        z0 = self.nodes[0]
        span = self.nodes[1:] - z0            # (j, m)
        affines = []
        for v in range(self.nvars):
            coeffs = np.concatenate([[z0[v]], span[:, v]])
            affines.append(Polynomial(j, 1, coeffs))
        max_pow = F.max(axis=0)
        pows = []
        for v in range(self.nvars):
            col = [Polynomial.constant(j, 1.0)]
            for _ in range(int(max_pow[v])):
                col.append(multiply(col[-1], affines[v]))
            pows.append(col)
        vals = np.zeros(E.shape[0], dtype=np.complex128)
        for idx in np.flatnonzero(mask):
            comp = pows[0][int(F[idx, 0])]
            for v in range(1, self.nvars):
                expo = int(F[idx, v])
                if expo:
                    comp = multiply(comp, pows[v][expo])
            vals[idx] = fall[idx] * np.dot(comp.coeffs, moments[: comp.coeffs.shape[0]])
        return vals

    def discretize(self, exactness):
        j = self.order
        if j == 0:
            return [(np.array([1.0 + 0j]), self.nodes[:1], self.alpha)]
        tnodes, weights = grundmann_moller_rule(j, rule_order_for_exactness(exactness))
        mapped = self.nodes[0][None, :] + tnodes @ (self.nodes[1:] - self.nodes[0])
        return [(weights.astype(np.complex128), mapped, self.alpha)]

    def to_json(self):
        return {
            "type": "kergin",
            "alpha": list(self.alpha),
            "nodes": [_point_json(row) for row in self.nodes],
        }

    def __repr__(self):
        return f"KerginCondition(alpha={self.alpha}, nodes={len(self.nodes)})"


class InnerProduct(Functional):
    """``f -> int f conj(b) dmu`` for a basis polynomial b and measure mu.

    Optional precomputed basis values at the measure nodes avoid re-evaluating
    high-degree coefficient forms (Gram-Schmidt carries exact node values).
    """

    def __init__(self, basis: Polynomial, measure: QuadratureMeasure, basis_values=None):
        super().__init__()
        if basis.nvars != measure.nvars:
            raise ValueError("basis and measure variable counts disagree")
        self.basis = basis
        self.measure = measure
        self.nvars = basis.nvars
        if basis_values is None:
            basis_values = measure.poly_values(basis)
        self._bvals = np.asarray(basis_values, dtype=np.complex128)

    def _weighted_conj(self):
        return self.measure.weights * np.conj(self._bvals)

    def _monomial_values(self, degree):
        V = self.measure.monomial_values(degree)
        return V @ self._weighted_conj()

    def discretize(self, exactness):
        return [(self._weighted_conj(), self.measure.nodes, (0,) * self.nvars)]

    def to_json(self):
        return {
            "type": "inner_product",
            "basis": self.basis.to_json(),
            "measure": self.measure.to_json(),
        }

    def __repr__(self):
        return f"InnerProduct(basis_degree={self.basis.degree}, domain={self.measure.domain})"


class Tensor(Functional):
    """``(mu (x) nu)(f)``: mu in the left variable block, nu in the right.

    On polynomials the action splits exactly along the graded-lex coefficient
    decomposition; on test functions it multiplies out the factor
    discretizations (iterated quadrature/evaluation).
    """

    def __init__(self, left: Functional, right: Functional):
        super().__init__()
        self.left = left
        self.right = right
        self.nvars = left.nvars + right.nvars

    def _monomial_values(self, degree):
        r1, r2 = factor_ranks(self.left.nvars, self.right.nvars, degree)
        return self.left.on_monomials(degree)[r1] * self.right.on_monomials(degree)[r2]

    def discretize(self, exactness):
        batches = []
        for w1, p1, a1 in self.left.discretize(exactness):
            for w2, p2, a2 in self.right.discretize(exactness):
                weights = (w1[:, None] * w2[None, :]).reshape(-1)
                pts = np.hstack(
                    [np.repeat(p1, p2.shape[0], axis=0), np.tile(p2, (p1.shape[0], 1))]
                )
                batches.append((weights, pts, tuple(a1) + tuple(a2)))
        return batches

    def to_json(self):
        return {"type": "tensor", "left": self.left.to_json(), "right": self.right.to_json()}

    def __repr__(self):
        return f"Tensor({self.left!r}, {self.right!r})"


def parse_functional(obj: dict) -> Functional:
    kind = obj.get("type")
    if kind == "point_eval":
        return PointEval(_point_from_json(obj["point"]))
    if kind == "derivative_eval":
        return DerivativeEval(obj["alpha"], _point_from_json(obj["point"]))
    if kind == "kergin":
        nodes = np.array([_point_from_json(row) for row in obj["nodes"]])
        return KerginCondition(obj["alpha"], nodes)
    if kind == "inner_product":
        return InnerProduct(Polynomial.from_json(obj["basis"]), parse_measure(obj["measure"]))
    if kind == "tensor":
        return Tensor(parse_functional(obj["left"]), parse_functional(obj["right"]))
    raise ValueError(f"unknown functional type {kind!r}")
