"""Dense multivariate polynomials over the complex numbers.

Coefficients are stored densely in graded-lex monomial order (see
:mod:`nprox.indexing`).  ``degree`` is a storage bound: the coefficient array
always has length ``monomial_count(nvars, degree)`` and trailing blocks may be
zero.  Instances are immutable; all arithmetic returns new objects.
"""
from __future__ import annotations

import numpy as np

from .indexing import (
    degree_starts,
    exponents,
    monomial_count,
    rank_of,
    ranks_of_rows,
    split_ranks,
)

_EVAL_CHUNK = 4096


class Polynomial:
    __slots__ = ("nvars", "degree", "coeffs")

    def __init__(self, nvars: int, degree: int, coeffs=None):
        if degree < 0:
            raise ValueError("degree bound must be >= 0")
        size = monomial_count(nvars, degree)
        if coeffs is None:
            data = np.zeros(size, dtype=np.complex128)
        else:
            data = np.asarray(coeffs, dtype=np.complex128).reshape(-1).copy()
            if data.shape[0] != size:
                raise ValueError(
                    f"expected {size} coefficients for nvars={nvars}, "
                    f"degree={degree}, got {data.shape[0]}"
                )
        data.setflags(write=False)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial instances are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, degree: int = 0) -> "Polynomial":
        return cls(nvars, degree)

    @classmethod
    def constant(cls, nvars: int, value, degree: int = 0) -> "Polynomial":
        coeffs = np.zeros(monomial_count(nvars, degree), dtype=np.complex128)
        coeffs[0] = value
        return cls(nvars, degree, coeffs)

    @classmethod
    def monomial(cls, nvars: int, alpha, coeff=1.0) -> "Polynomial":
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != nvars:
            raise ValueError("alpha length does not match nvars")
        degree = sum(alpha)
        coeffs = np.zeros(monomial_count(nvars, degree), dtype=np.complex128)
        coeffs[rank_of(alpha)] = coeff
        return cls(nvars, degree, coeffs)

    # -- bookkeeping -------------------------------------------------------

    def coeff(self, alpha) -> complex:
        """Coefficient of the monomial ``z^alpha`` (0 beyond the bound)."""
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.nvars:
            raise ValueError("alpha length does not match nvars")
        if sum(alpha) > self.degree:
            return 0j
        return complex(self.coeffs[rank_of(alpha)])

    def effective_degree(self) -> int:
        """Largest degree with a nonzero coefficient, -1 for the zero polynomial."""
        starts = degree_starts(self.nvars, self.degree)
        for j in range(self.degree, -1, -1):
            if np.any(self.coeffs[starts[j]:starts[j + 1]] != 0):
                return j
        return -1

    def embedded(self, degree: int) -> "Polynomial":
        """The same polynomial with the storage bound raised to ``degree``."""
        if degree < self.degree:
            raise ValueError("embedded() cannot lower the bound; use truncated()")
        if degree == self.degree:
            return self
        coeffs = np.zeros(monomial_count(self.nvars, degree), dtype=np.complex128)
        coeffs[: self.coeffs.shape[0]] = self.coeffs
        return Polynomial(self.nvars, degree, coeffs)

    def truncated(self, degree: int) -> "Polynomial":
        """Drop all terms of degree above ``degree``."""
        if degree >= self.degree:
            return self.embedded(degree)
        keep = monomial_count(self.nvars, degree)
        return Polynomial(self.nvars, degree, self.coeffs[:keep])

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("mixed variable counts")
        d = max(self.degree, other.degree)
        a = self.embedded(d).coeffs
        b = other.embedded(d).coeffs
        return Polynomial(self.nvars, d, a + b)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __rmul__(self, scalar):
        if isinstance(scalar, Polynomial):
            return NotImplemented
        return Polynomial(self.nvars, self.degree, self.coeffs * complex(scalar))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return Polynomial(self.nvars, self.degree, self.coeffs * complex(other))

    # -- evaluation --------------------------------------------------------

    def eval(self, point) -> complex:
        return complex(self.eval_many(np.asarray(point, dtype=np.complex128).reshape(1, -1))[0])

    def eval_many(self, points) -> np.ndarray:
        """Evaluate at ``points`` of shape ``(m, nvars)``; returns ``(m,)``."""
        pts = np.asarray(points, dtype=np.complex128)
        if pts.ndim == 1:
            pts = pts.reshape(-1, self.nvars) if self.nvars > 1 else pts.reshape(-1, 1)
        if pts.shape[1] != self.nvars:
            raise ValueError("points have the wrong number of coordinates")
        nz = np.flatnonzero(self.coeffs)
        out = np.zeros(pts.shape[0], dtype=np.complex128)
        if nz.size == 0:
            return out
        E = exponents(self.nvars, self.degree)[nz]
        c = self.coeffs[nz]
        maxdeg = int(E.max(initial=0))
        for lo in range(0, pts.shape[0], _EVAL_CHUNK):
            hi = min(lo + _EVAL_CHUNK, pts.shape[0])
            chunk = pts[lo:hi]
            vals = np.ones((hi - lo, nz.size), dtype=np.complex128)
            for v in range(self.nvars):
                powers = chunk[:, v, None] ** np.arange(maxdeg + 1)[None, :]
                vals *= powers[:, E[:, v]]
            out[lo:hi] = vals @ c
        return out

    # -- calculus ----------------------------------------------------------

    def derivative(self, alpha) -> "Polynomial":
        """Exact partial derivative ``D^alpha``."""
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.nvars:
            raise ValueError("alpha length does not match nvars")
        if any(a < 0 for a in alpha):
            raise ValueError("derivative orders must be nonnegative")
        order = sum(alpha)
        if order == 0:
            return self
        if order > self.degree:
            return Polynomial.zero(self.nvars, 0)
        dout = self.degree - order
        E_out = exponents(self.nvars, dout)
        src = ranks_of_rows(self.nvars, self.degree, E_out + np.asarray(alpha, dtype=np.int32))
        factor = np.ones(E_out.shape[0], dtype=np.float64)
        for v, a in enumerate(alpha):
            for t in range(1, a + 1):
                factor *= E_out[:, v] + t
        return Polynomial(self.nvars, dout, self.coeffs[src] * factor)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "degree": self.degree,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Polynomial":
        coeffs = np.array([complex(re, im) for re, im in obj["coeffs"]])
        return cls(int(obj["nvars"]), int(obj["degree"]), coeffs)

    def __repr__(self):
        nnz = int(np.count_nonzero(self.coeffs))
        return f"Polynomial(nvars={self.nvars}, degree={self.degree}, terms={nnz})"


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Product polynomial with degree bound ``p.degree + q.degree``."""
    if p.nvars != q.nvars:
        raise ValueError("mixed variable counts")
    n = p.nvars
    dout = p.degree + q.degree
    if n == 1:
        return Polynomial(1, dout, np.convolve(p.coeffs, q.coeffs))
    out = np.zeros(monomial_count(n, dout), dtype=np.complex128)
    nzq = np.flatnonzero(q.coeffs)
    if nzq.size and np.any(p.coeffs != 0):
        Eq = exponents(n, q.degree)[nzq]
        qc = q.coeffs[nzq]
        Ep = exponents(n, p.degree)
        for i in np.flatnonzero(p.coeffs):
            ranks = ranks_of_rows(n, dout, Ep[i] + Eq)
            out[ranks] += p.coeffs[i] * qc
    return Polynomial(n, dout, out)


def tensor_product(p: Polynomial, q: Polynomial) -> Polynomial:
    """Polynomial ``p(z) q(w)`` on the joined variable block ``(z, w)``."""
    mask, r1, r2 = split_ranks(p.nvars, p.degree, q.nvars, q.degree)
    coeffs = np.zeros(mask.shape[0], dtype=np.complex128)
    coeffs[mask] = p.coeffs[r1] * q.coeffs[r2]
    return Polynomial(p.nvars + q.nvars, p.degree + q.degree, coeffs)


def coeff_distance(p: Polynomial, q: Polynomial) -> float:
    """Max absolute coefficient difference after aligning degree bounds."""
    if p.nvars != q.nvars:
        raise ValueError("mixed variable counts")
    d = max(p.degree, q.degree)
    return float(np.max(np.abs(p.embedded(d).coeffs - q.embedded(d).coeffs)))
