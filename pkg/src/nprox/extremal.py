"""Model compact sets, their extremal functions, and convergence-rate tools.

Supported compacts are the interval [-1, 1] in the plane, the closed unit
disk, and finite products of these.  For each the (Green) extremal function
V_K has a closed form: log|z + sqrt(z^2 - 1)| on the interval model,
max(0, log|z|) on the disk, and the pointwise maximum over factors on
products.  The level region K_R is {V_K < ln R}; its boundary parametrizes
where geometric convergence rates are read off.
"""
from __future__ import annotations

import math

import numpy as np

from .polynomials import Polynomial


class CompactModel:
    """One of: interval [-1,1], closed unit disk, or a product of models."""

    def __init__(self, kind: str, factors=None):
        if kind in ("interval", "disk"):
            self.kind = kind
            self.factors = None
        elif kind == "product":
            if not factors or len(factors) < 2:
                raise ValueError("product model needs at least two factors")
            self.kind = "product"
            self.factors = [CompactModel(f) if isinstance(f, str) else f
                            for f in factors]
        else:
            raise ValueError(f"unsupported compact model {kind!r}")

    @property
    def nvars(self) -> int:
        if self.kind == "product":
            return sum(f.nvars for f in self.factors)
        return 1

    # -- extremal function ----------------------------------------------------

    def extremal_value(self, z) -> np.ndarray:
        """V_K at each point (rows of z); nonnegative, zero on K."""
        pts = np.asarray(z, dtype=np.complex128)
        squeeze = pts.ndim == 0 or (pts.ndim == 1 and self.nvars > 1)
        pts = pts.reshape(-1, self.nvars)
        out = self._extremal(pts)
        return float(out[0]) if squeeze else out

    def _extremal(self, pts: np.ndarray) -> np.ndarray:
        if self.kind == "disk":
            return np.maximum(0.0, np.log(np.maximum(np.abs(pts[:, 0]), 1e-300)))
        if self.kind == "interval":
            u = pts[:, 0]
            s = np.sqrt(u * u - 1.0)
            mod = np.maximum(np.abs(u + s), np.abs(u - s))
            return np.maximum(0.0, np.log(mod))
        vals = np.zeros(pts.shape[0])
        col = 0
        for f in self.factors:
            vals = np.maximum(vals, f._extremal(pts[:, col:col + f.nvars]))
            col += f.nvars
        return vals

    # -- sampling -------------------------------------------------------------

    def sample_points(self, count: int) -> np.ndarray:
        """Deterministic points of K dense enough for polynomial sup norms.

        Interval: Chebyshev-distributed abscissas (endpoints included).
        Disk: the boundary circle, where the maximum principle puts the sup.
        Products: cartesian products of factor samples.
        """
        if self.kind == "interval":
            theta = np.linspace(0.0, np.pi, count)
            return np.cos(theta).astype(np.complex128).reshape(-1, 1)
        if self.kind == "disk":
            theta = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
            return np.exp(1j * theta).reshape(-1, 1)
        return self._combine([f.sample_points for f in self.factors], count)

    def level_set_boundary(self, R: float, count: int) -> np.ndarray:
        """Points with V_K = ln R exactly (up to roundoff); requires R > 1.

        Interval: the Joukowski image (w + 1/w)/2 of the circle |w| = R, an
        ellipse with semi-axes (R + 1/R)/2 and (R - 1/R)/2.  Disk: the circle
        of radius R.  Products: combinations of factor level points, whose
        maximum is ln R by construction.
        """
        if R <= 1:
            raise ValueError("level sets are defined for R > 1")
        if self.kind == "interval":
            w = R * np.exp(1j * np.linspace(0.0, 2 * np.pi, count, endpoint=False))
            return (0.5 * (w + 1.0 / w)).reshape(-1, 1)
        if self.kind == "disk":
            theta = np.linspace(0.0, 2 * np.pi, count, endpoint=False)
            return (R * np.exp(1j * theta)).reshape(-1, 1)
        return self._combine(
            [lambda m, f=f: f.level_set_boundary(R, m) for f in self.factors], count
        )

    def _combine(self, samplers, count: int) -> np.ndarray:
        per = max(2, math.ceil(count ** (1.0 / len(samplers))))
        blocks = [s(per) for s in samplers]
        out = blocks[0]
        for b in blocks[1:]:
            out = np.hstack(
                [np.repeat(out, b.shape[0], axis=0), np.tile(b, (out.shape[0], 1))]
            )
        return out[:count] if out.shape[0] > count else out

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "product":
            return {"kind": "product", "factors": [f.to_json() for f in self.factors]}
        return {"kind": self.kind}

    def __repr__(self):
        if self.kind == "product":
            return "CompactModel(product: " + ", ".join(f.kind for f in self.factors) + ")"
        return f"CompactModel({self.kind})"


def parse_compact(obj) -> CompactModel:
    if isinstance(obj, str):
        return CompactModel(obj)
    kind = obj.get("kind")
    if kind == "product":
        return CompactModel("product", [parse_compact(f) for f in obj["factors"]])
    return CompactModel(kind)


def bws_check(p: Polynomial, model: CompactModel, R: float, samples: int = 1024) -> float:
    """Sampled sup of p on the level set over R^deg times its sup on K.

    The underlying inequality bounds |p| on {V_K <= ln R} by R^(deg p) times
    the sup on K, so the returned ratio is at most 1 up to sampling slack.
    The degree used is the effective degree (trailing zero coefficient
    blocks do not count), which keeps the equality case z^d exact.
    """
    deg = p.effective_degree()
    if deg < 0:
        return 0.0
    on_k = float(np.max(np.abs(p.eval_many(model.sample_points(samples)))))
    on_level = float(np.max(np.abs(p.eval_many(model.level_set_boundary(R, samples)))))
    return on_level / (R**deg * on_k)


def fit_decay_rate(degrees, errors, floor: float = 1e-13):
    """Geometric decay rate of errors over degrees, floor-aware.

    Values at or below the floor (relative to the largest error) are
    treated as converged-to-roundoff and excluded; the fit uses the tail
    half of what remains, where asymptotic behavior lives.  Returns
    (rate, slope_stderr, used_indices); rate is per unit degree, so
    errors ~ C * rate^degree.  With fewer than three usable points the
    rate is 0.0 and the caller should treat the decay as off-scale.
    """
    degrees = np.asarray(degrees, dtype=float)
    errors = np.asarray(errors, dtype=float)
    cut = floor * max(1.0, float(np.max(errors, initial=0.0)))
    keep = np.flatnonzero((errors > cut) & np.isfinite(errors))
    if keep.size < 3:
        return 0.0, 0.0, keep
    tail = keep[keep.size // 2:]
    if tail.size < 3:
        tail = keep[-3:]
    x, y = degrees[tail], np.log(errors[tail])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    denom = float(np.sum((x - x.mean()) ** 2))
    dof = max(1, x.size - 2)
    stderr = float(np.sqrt(np.sum(resid**2) / dof / denom)) if denom > 0 else 0.0
    return float(np.exp(slope)), stderr, tail


class RhoEstimate:
    """Result of fitting the geometric convergence rate of projections."""

    def __init__(self, degrees, errors, rho, slope_stderr, floor_hit):
        self.degrees = list(degrees)
        self.errors = list(errors)
        self.rho = rho
        self.slope_stderr = slope_stderr
        self.floor_hit = floor_hit

    def __repr__(self):
        return f"RhoEstimate(rho={self.rho}, degrees=0..{self.degrees[-1]})"


def rho_estimate(f, model: CompactModel, dmax: int, measure, grid: int = 256,
                 floor: float = 1e-13) -> RhoEstimate:
    """Convergence radius parameter from orthogonal-projection errors.

    Projects f onto each degree using the measure's orthonormal basis (the
    partial sums of one expansion, so the whole degree sweep costs one
    Gram-Schmidt pass), measures sup errors on the sampled compact, and fits
    log error against degree over the tail half.  Errors below the roundoff
    floor are excluded; if everything is floored (f is a polynomial, say)
    the estimate is infinity.
    """
    from .measures import gram_schmidt_basis

    basis = gram_schmidt_basis(measure, dmax)
    fvals = f.values(measure.nodes)
    w = measure.weights
    coeffs = np.array(
        [np.sum(w * fvals * np.conj(basis.node_values[i])) for i in range(len(basis))]
    )
    pts = model.sample_points(grid)
    target = f.values(pts)
    from .indexing import exponents, monomial_count

    E = exponents(model.nvars, dmax)
    sample_vals = np.ones((E.shape[0], pts.shape[0]), dtype=np.complex128)
    maxdeg = int(E.max(initial=0))
    for v in range(model.nvars):
        powers = pts[:, v][None, :] ** np.arange(maxdeg + 1)[:, None]
        sample_vals *= powers[E[:, v], :]

    # partial sums accumulate in coefficient space; evaluation happens once
    # per degree on the combined vector, not per basis element
    errors = []
    partial = np.zeros(E.shape[0], dtype=np.complex128)
    degrees = list(range(dmax + 1))
    for d in degrees:
        lo, hi = monomial_count(model.nvars, d - 1), monomial_count(model.nvars, d)
        for i in range(lo, hi):
            partial += coeffs[i] * basis.coeff_matrix[i]
        approx = partial @ sample_vals
        errors.append(float(np.max(np.abs(target - approx))))

    cut = floor * max(1.0, float(np.max(errors)))
    clean = sum(1 for e in errors if e > cut)
    floor_hit = clean < len(errors)  # some degrees converged to roundoff
    if clean < 5:
        # decay too fast to fit a geometric rate: polynomial or entire input
        return RhoEstimate(degrees, errors, math.inf, 0.0, floor_hit)
    rate, stderr, _ = fit_decay_rate(degrees, errors, floor=floor)
    if rate <= 0.0:
        return RhoEstimate(degrees, errors, math.inf, 0.0, floor_hit)
    return RhoEstimate(degrees, errors, 1.0 / rate, stderr, floor_hit)
