"""Experiment harness: sweeps, the cylinder build, the integer-node test.

Reports are written as CSV plus JSON metadata.  The CSV is the determinism
contract: identical configs must produce identical bytes, so wall-clock
timings are kept out of it by default (the seconds column holds zeros unless
timings are explicitly requested) and live in the JSON metadata, which is
deterministic except for its wall_time fields.
"""
from __future__ import annotations

import hashlib
import json
import math
import time

import numpy as np

from .extremal import fit_decay_rate, parse_compact
from .points import leja_disk, real_leja
from .testfunctions import parse_function
from .zoo import projector_from_spec


class ExperimentConfig:
    """Validated bundle of everything a sweep needs.

    Fields: name, projector spec (possibly a newton_product composition),
    function tree, compact model, strictly increasing degree list, per-axis
    grid resolution (at least 64), seed, optional quadrature exactness and
    expected rate parameter.
    """

    def __init__(self, name, projector, function, compact, degrees,
                 grid=128, seed=0, exactness=None, expected_rho=None):
        self.name = str(name)
        self.projector = projector
        self.function = function
        self.compact = compact
        self.degrees = [int(d) for d in degrees]
        self.grid = int(grid)
        self.seed = int(seed)
        self.exactness = None if exactness is None else int(exactness)
        self.expected_rho = None if expected_rho is None else float(expected_rho)
        if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError("degrees must be strictly increasing")
        if self.grid < 64:
            raise ValueError("grid resolution must be at least 64 per dimension")

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentConfig":
        known = {k: obj[k] for k in (
            "name", "projector", "function", "compact", "degrees",
            "grid", "seed", "exactness", "expected_rho") if k in obj}
        known.setdefault("name", "experiment")
        return cls(**known)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "projector": self.projector,
            "function": self.function,
            "compact": self.compact,
            "degrees": self.degrees,
            "grid": self.grid,
            "seed": self.seed,
        }
        if self.exactness is not None:
            out["exactness"] = self.exactness
        if self.expected_rho is not None:
            out["expected_rho"] = self.expected_rho
        return out

    def config_hash(self) -> str:
        canon = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


class ExperimentReport:
    """Per-degree records plus the fitted rate and run metadata."""

    def __init__(self, config: dict, rows, rate, metadata=None, extras=None):
        self.config = config
        self.rows = rows
        self.rate = rate
        self.metadata = dict(metadata or {})
        self.extras = dict(extras or {})

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "rows": self.rows,
            "rate": self.rate,
            "metadata": self.metadata,
            "extras": self.extras,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentReport":
        return cls(obj["config"], obj["rows"], obj["rate"],
                   obj.get("metadata"), obj.get("extras"))


def build_projector(spec: dict, degree: int):
    """Zoo spec or a newton_product composition of two zoo specs."""
    if spec.get("kind") == "newton_product":
        f1, f2 = spec["factors"]
        left = projector_from_spec(f1, degree)
        right = projector_from_spec(f2, degree)
        return left.newton_product(
            right, cond_threshold=spec.get("cond_threshold", 1e12)
        )
    return projector_from_spec(spec, degree)


def _row(d, sup, seconds):
    root = sup ** (1.0 / max(d, 1)) if sup > 0 else 0.0
    return {"d": int(d), "sup_error": float(sup), "root_error": float(root),
            "seconds": float(seconds)}


def convergence_run(config: ExperimentConfig) -> ExperimentReport:
    """Build the projector family across degrees and track sup errors."""
    t0 = time.perf_counter()
    model = parse_compact(config.compact)
    f = parse_function(config.function, model.nvars)
    samples = model.sample_points(config.grid ** model.nvars)
    target = f.values(samples)  # raises if a pole sits on the compact
    rows = []
    for d in config.degrees:
        tick = time.perf_counter()
        proj = build_projector(config.projector, d)
        approx = proj.apply(f, exactness=config.exactness)
        sup = float(np.max(np.abs(target - approx.eval_many(samples))))
        rows.append(_row(d, sup, time.perf_counter() - tick))
    rate, stderr, _ = fit_decay_rate([r["d"] for r in rows],
                                     [r["sup_error"] for r in rows])
    metadata = {
        "config_hash": config.config_hash(),
        "wall_time_s": time.perf_counter() - t0,
        "fit_stderr": stderr,
        "grid": config.grid,
        "seed": config.seed,
    }
    if config.expected_rho is not None:
        metadata["expected_rate"] = 1.0 / config.expected_rho
    return ExperimentReport(config.to_json(), rows, rate, metadata)


# -- the cylinder experiment -----------------------------------------------------


def cylinder_nodes(degree: int):
    """Planar disk Leja nodes and real Leja interval nodes, degree+1 each."""
    block = 2
    while block < degree + 1:
        block *= 2
    disk = leja_disk(block)[: degree + 1]
    planar = np.stack([disk.real, disk.imag], axis=1)
    line = real_leja(leja_disk(max(2 * block, 64)))[: degree + 1]
    return planar, line


def cylinder_grid(resolution: int):
    """Deterministic samples of the solid unit disk times [-1, 1].

    The disk is scanned on equiangular by radial rings (including the rim),
    the segment on Chebyshev-distributed abscissas.
    """
    nr = max(4, resolution // 16)
    radii = np.linspace(0.0, 1.0, nr)
    angles = np.linspace(0.0, 2 * np.pi, resolution, endpoint=False)
    disk = np.stack(
        [np.outer(radii, np.cos(angles)).ravel(),
         np.outer(radii, np.sin(angles)).ravel()], axis=1
    )
    seg = np.cos(np.linspace(0.0, np.pi, resolution))
    pts = np.hstack(
        [np.repeat(disk, seg.size, axis=0),
         np.tile(seg.reshape(-1, 1), (disk.shape[0], 1))]
    )
    return pts.astype(np.complex128)


def cylinder_run(config: ExperimentConfig) -> ExperimentReport:
    """Kergin on the disk crossed with Lagrange on the segment.

    Per degree: build both factors at planar disk-Leja and real-Leja nodes,
    take the Newton product, apply it to the configured function on the
    cylinder grid.  The extras carry the product node set (a_i, b_j) with
    i + j <= d for the largest degree and the interpolation residuals there.
    """
    if max(config.degrees) > 12:
        raise ValueError("cylinder degrees are capped at 12")
    t0 = time.perf_counter()
    f = parse_function(config.function, 3)
    samples = cylinder_grid(config.grid)
    target = f.values(samples)
    rows = []
    final = {}
    for d in config.degrees:
        tick = time.perf_counter()
        planar, line = cylinder_nodes(d)
        kergin = projector_from_spec({"kind": "kergin", "nodes": planar.tolist()})
        lagrange = projector_from_spec(
            {"kind": "lagrange", "nodes": [[float(x)] for x in line]}
        )
        prod = kergin.newton_product(lagrange)
        exactness = config.exactness
        if exactness is None:
            exactness = min(2 * d + 5, 21)  # past ~21 the simplex rule noise grows
        approx = prod.apply(f, exactness=exactness)
        sup = float(np.max(np.abs(target - approx.eval_many(samples))))
        rows.append(_row(d, sup, time.perf_counter() - tick))
        if d == max(config.degrees):
            nodes = [
                (planar[i, 0].real, planar[i, 1].real, line[j].real)
                for i in range(d + 1)
                for j in range(d + 1 - i)
            ]
            node_pts = np.array(nodes, dtype=np.complex128)
            resid = float(np.max(np.abs(f.values(node_pts) - approx.eval_many(node_pts))))
            final = {"nodes": nodes, "node_residual": resid, "node_count": len(nodes)}
    rate, stderr, _ = fit_decay_rate([r["d"] for r in rows],
                                     [r["sup_error"] for r in rows])
    metadata = {
        "config_hash": config.config_hash(),
        "wall_time_s": time.perf_counter() - t0,
        "fit_stderr": stderr,
        "node_residual": final.get("node_residual"),
        "node_count": final.get("node_count"),
    }
    return ExperimentReport(config.to_json(), rows, rate, metadata,
                            extras={"nodes": final.get("nodes", [])})


# -- integer-node threshold experiment ---------------------------------------------


def _omega_sup_logs(dmax: int, gridsize: int = 4097):
    """log of max over [0,1] of the running node products prod |x - i|."""
    x = np.linspace(0.0, 1.0, gridsize)
    logs = np.zeros(gridsize)
    out = [0.0]  # empty product
    with np.errstate(divide="ignore"):
        for k in range(dmax):
            logs += np.log(np.abs(x - k))
            out.append(float(np.max(logs)))
    return out


def divided_differences_exp(lam: float, dmax: int):
    """Divided differences of exp(lam x) at 0..dmax, exact closed form.

    The k-th difference equals (e^lam - 1)^k / k!; returned in log magnitude
    to survive large k.
    """
    base = math.expm1(lam)
    logs = []
    for k in range(dmax + 1):
        logs.append(k * math.log(abs(base)) - math.lgamma(k + 1) if base != 0 else
                    (0.0 if k == 0 else -math.inf))
    return logs


def polya_run(lam: float, dmax: int) -> dict:
    """Newton-series term norms of exp(lam x) at integer nodes on [0, 1].

    Works in log magnitude throughout (factorial-sized factors overflow
    doubles near degree 50).  The geometric ratio of successive term norms
    drives the convergence verdict; the raw ratios carry a 1/(k+1) bias from
    the factorial, so the reported ratio extrapolates them linearly in
    1/(k+1).  The limiting value is |e^lam - 1|, below 1 exactly when
    lam < ln 2 for positive lam.
    """
    if dmax > 60:
        raise ValueError("dmax capped at 60")
    dd_logs = divided_differences_exp(lam, dmax)
    sup_logs = _omega_sup_logs(dmax)
    term_logs = [dd + sup for dd, sup in zip(dd_logs, sup_logs)]
    ratios = [math.exp(term_logs[k + 1] - term_logs[k]) for k in range(dmax)]
    # drop the earliest ratios (pre-asymptotic), fit r_k ~ q + c/(k+1)
    ks = np.arange(dmax // 2, dmax)
    x = 1.0 / (ks + 1.0)
    y = np.array([ratios[k] for k in ks])
    slope, intercept = np.polyfit(x, y, 1)
    ratio = float(intercept)
    return {
        "lambda": lam,
        "dmax": dmax,
        "term_logs": term_logs,
        "ratios": ratios,
        "ratio": ratio,
        "driving_ratio": abs(math.expm1(lam)),
        "verdict": "converge" if ratio < 1.0 else "diverge",
    }


def polya_bisect(dmax: int = 40, lo: float = 0.3, hi: float = 1.0,
                 steps: int = 12) -> dict:
    """Bisect the convergence verdict to bracket the threshold parameter."""
    if polya_run(lo, dmax)["verdict"] != "converge":
        raise ValueError("lower endpoint must converge")
    if polya_run(hi, dmax)["verdict"] != "diverge":
        raise ValueError("upper endpoint must diverge")
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if polya_run(mid, dmax)["verdict"] == "converge":
            lo = mid
        else:
            hi = mid
    return {"low": lo, "high": hi, "dmax": dmax, "width": hi - lo}


# -- report files ---------------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def report_write(report: ExperimentReport, out_dir, timings: bool = False):
    """CSV plus JSON; CSV bytes depend only on config and seed.

    The seconds column is zeroed unless timings are requested, because wall
    clock readings would break byte-for-byte reproducibility; real timings
    always live in the JSON metadata and per-row records.
    """
    import os

    os.makedirs(out_dir, exist_ok=True)
    name = report.config.get("name", "report")
    csv_path = os.path.join(out_dir, f"{name}.csv")
    json_path = os.path.join(out_dir, f"{name}.json")
    lines = ["d,sup_error,root_error,seconds"]
    for r in report.rows:
        secs = r["seconds"] if timings else 0.0
        lines.append(
            f"{r['d']},{_fmt(r['sup_error'])},{_fmt(r['root_error'])},{_fmt(float(secs))}"
        )
    with open(csv_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(json_path, "w") as fh:
        json.dump(report.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    written = [csv_path, json_path]
    nodes = report.extras.get("nodes")
    if nodes:
        nodes_path = os.path.join(out_dir, f"{name}_nodes.csv")
        rows = ["ax,ay,b"] + [
            f"{_fmt(float(a))},{_fmt(float(b))},{_fmt(float(c))}" for a, b, c in nodes
        ]
        with open(nodes_path, "w") as fh:
            fh.write("\n".join(rows) + "\n")
        written.append(nodes_path)
    return written
