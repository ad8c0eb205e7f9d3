"""Experiment harness: configs, reports, sweeps, the integer-node runs."""
import json
import pathlib
import math
import os

import numpy as np
import pytest

from nprox.experiments import (
    ExperimentConfig,
    ExperimentReport,
    convergence_run,
    cylinder_grid,
    cylinder_run,
    divided_differences_exp,
    polya_bisect,
    polya_run,
    report_write,
)
from nprox.functionals import KerginCondition
from nprox.testfunctions import Affine, Exp


def small_config(**overrides):
    base = dict(
        name="unit",
        projector={"kind": "lagrange", "nodes": "real_leja"},
        function=["exp", ["affine", [1.0], 0.0]],
        compact="interval",
        degrees=[2, 4, 6],
        grid=64,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def test_config_rejects_unordered_degrees():
    with pytest.raises(ValueError, match="strictly increasing"):
        small_config(degrees=[2, 2, 4])
    with pytest.raises(ValueError, match="strictly increasing"):
        small_config(degrees=[4, 2])


def test_config_rejects_coarse_grid():
    with pytest.raises(ValueError, match="at least 64"):
        small_config(grid=32)


def test_config_hash_tracks_content():
    a = small_config()
    b = small_config()
    assert a.config_hash() == b.config_hash()
    c = small_config(degrees=[2, 4, 8])
    assert a.config_hash() != c.config_hash()


def test_config_json_round_trip():
    cfg = small_config(exactness=15, expected_rho=2.5)
    again = ExperimentConfig.from_json(cfg.to_json())
    assert again.config_hash() == cfg.config_hash()
    assert again.exactness == 15
    assert again.expected_rho == 2.5


def test_convergence_entire_function_decreases_fast():
    report = convergence_run(small_config(degrees=[2, 4, 6, 8]))
    sups = [r["sup_error"] for r in report.rows]
    assert all(b < a for a, b in zip(sups, sups[1:]))
    assert sups[-1] < 1e-6
    for r in report.rows:
        if r["sup_error"] > 0:
            want = r["sup_error"] ** (1.0 / max(r["d"], 1))
            assert abs(r["root_error"] - want) < 1e-15


def test_convergence_rate_recovers_pole_distance():
    cfg = small_config(
        function=["recip", ["affine", [1.0], -2.0]],
        projector={"kind": "lagrange", "nodes": "chebyshev", "cond_threshold": None},
        degrees=list(range(2, 31, 2)),
        grid=128,
    )
    report = convergence_run(cfg)
    want = 1.0 / (2.0 + math.sqrt(3.0))
    assert abs(report.rate - want) < 0.05 * want
    assert report.metadata["config_hash"] == cfg.config_hash()


def test_report_json_round_trip():
    report = convergence_run(small_config())
    again = ExperimentReport.from_json(
        json.loads(json.dumps(report.to_json()))
    )
    assert again.rows == report.rows
    assert again.rate == report.rate


def test_report_write_is_deterministic(tmp_path):
    report = convergence_run(small_config())
    d1, d2 = tmp_path / "a", tmp_path / "b"
    p1 = report_write(report, d1)
    p2 = report_write(report, d2)
    csv1 = pathlib.Path(p1[0]).read_bytes()
    csv2 = pathlib.Path(p2[0]).read_bytes()
    assert csv1 == csv2
    # zeroed seconds column unless timings are requested
    assert all(line.endswith(b",0.0") for line in csv1.splitlines()[1:])
    header = csv1.splitlines()[0]
    assert header == b"d,sup_error,root_error,seconds"


def test_report_write_with_timings(tmp_path):
    report = convergence_run(small_config())
    paths = report_write(report, tmp_path, timings=True)
    lines = pathlib.Path(paths[0]).read_text().splitlines()[1:]
    secs = [float(row.split(",")[3]) for row in lines]
    assert any(s > 0 for s in secs)


def test_report_write_empty_degrees(tmp_path):
    report = ExperimentReport(config={"name": "empty"}, rows=[], rate=0.0)
    paths = report_write(report, tmp_path)
    assert pathlib.Path(paths[0]).read_text() == "d,sup_error,root_error,seconds\n"


def test_convergence_refuses_pole_on_the_compact():
    cfg = small_config(function=["recip", ["affine", [1.0], -0.5]])
    with pytest.raises(Exception):
        convergence_run(cfg)


# -- cylinder --------------------------------------------------------------------


def test_cylinder_grid_shape_and_range():
    pts = cylinder_grid(64)
    xy = pts[:, :2]
    assert np.max(np.abs(xy)) <= 1.0 + 1e-12
    assert np.max(np.sqrt(np.sum(xy.real**2, axis=1))) <= 1.0 + 1e-12
    assert np.max(np.abs(pts[:, 2])) <= 1.0 + 1e-12
    # the rim and the segment ends are present
    assert np.min(np.abs(np.sqrt(np.sum(xy.real**2, axis=1)) - 1.0)) < 1e-12
    assert np.max(pts[:, 2].real) == 1.0


def test_cylinder_run_small_degrees():
    cfg = ExperimentConfig(
        name="cyl",
        projector=None,
        function=["exp", ["affine", [1.0, 1.0, 1.0], 0.0]],
        compact=None,
        degrees=[2, 3, 4],
        grid=64,
    )
    report = cylinder_run(cfg)
    sups = [r["sup_error"] for r in report.rows]
    assert all(b < a for a, b in zip(sups, sups[1:]))
    # nodes (a_i, b_j) with i + j <= 4: 5 + 4 + 3 + 2 + 1 pairs
    assert report.metadata["node_count"] == 15
    assert report.metadata["node_residual"] < 1e-8
    assert len(report.extras["nodes"]) == 15


def test_cylinder_degree_cap():
    cfg = ExperimentConfig(
        name="cyl", projector=None, compact=None,
        function=["exp", ["affine", [1.0, 1.0, 1.0], 0.0]],
        degrees=[2, 13], grid=64,
    )
    with pytest.raises(ValueError, match="capped"):
        cylinder_run(cfg)


# -- integer nodes ---------------------------------------------------------------


def test_divided_differences_match_simplex_quadrature():
    # the closed form (e^lam - 1)^k / k! against the library's own
    # simplex-integral functionals at nodes 0..k
    lam = 0.7
    f = Exp(Affine(np.array([lam]), 0.0))
    logs = divided_differences_exp(lam, 6)
    for k in range(1, 7):
        nodes = np.arange(k + 1, dtype=float).reshape(-1, 1)
        cond = KerginCondition((k,), nodes)
        got = cond.apply_to_function(f, exactness=25)
        want = math.exp(logs[k])
        assert abs(got - want) < 1e-8 * want


def test_polya_ratio_tracks_the_driving_factor():
    for lam in (0.3, 0.5, 0.8):
        out = polya_run(lam, 40)
        drift = abs(out["ratio"] - out["driving_ratio"]) / out["driving_ratio"]
        assert drift < 0.02
        assert out["verdict"] == ("converge" if lam < math.log(2) else "diverge")


def test_polya_raw_ratios_are_biased_downward():
    # successive term ratios carry a k/(k+1) factor from the factorial;
    # the 1/(k+1) extrapolation removes most of it
    out = polya_run(0.5, 40)
    raw_tail = out["ratios"][-1]
    assert raw_tail < out["driving_ratio"]
    assert abs(out["ratio"] - out["driving_ratio"]) < abs(
        raw_tail - out["driving_ratio"]
    )


def test_polya_term_norms_monotone_once_settled():
    out = polya_run(0.3, 40)
    logs = out["term_logs"]
    assert all(b < a for a, b in zip(logs[10:], logs[11:]))


def test_polya_dmax_cap():
    with pytest.raises(ValueError, match="capped"):
        polya_run(0.5, 61)


def test_polya_bisection_brackets_the_threshold():
    out = polya_bisect(40)
    assert out["low"] < math.log(2.0) < out["high"] + 0.05
    assert out["high"] - out["low"] < 1e-3
    assert out["low"] - 0.05 < math.log(2.0)


def test_polya_bisection_validates_endpoints():
    with pytest.raises(ValueError):
        polya_bisect(40, lo=0.9, hi=1.0)
    with pytest.raises(ValueError):
        polya_bisect(40, lo=0.3, hi=0.5)
