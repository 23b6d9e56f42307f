"""Exit criteria. Each test prints one PASS/FAIL line, also echoed in the terminal summary."""

import time

import numpy as np
import pytest

from bicyl import cli
from bicyl.analytic import (
    approx_area,
    approx_volume,
    cross_section_depth,
    cross_section_width,
    reduced_area,
    reduced_volume,
    relative_error_pct,
    volume_radicand,
)
from bicyl.geometry import ReducedConfig, build_reduced_pair, point_to_segment_distance
from bicyl.lowdisc import sobol_points
from bicyl.qmc import QmcSpec, estimate_intersection_area, estimate_intersection_volume, estimate_reduced

DELTAS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
TABLE_V = (0.015, 0.056, 0.120, 0.199, 0.290, 0.387, 0.481, 0.567, 0.635)
TABLE_A = (0.612, 1.190, 1.732, 2.232, 2.688, 3.093, 3.440, 3.719, 3.916)
TABLE_V_ERR = (-9.4, -12.8, -14.8, -15.4, -14.8, -12.9, -9.9, -6.3, -2.4)
TABLE_A_ERR = (-2.2, -3.8, -4.9, -5.3, -5.2, -4.6, -3.6, -2.3, -0.9)


def test_c1_table_volume(report):
    t0 = time.perf_counter()
    values = [reduced_volume(d).value for d in DELTAS]
    elapsed = time.perf_counter() - t0
    dev = max(abs(v - ref) for v, ref in zip(values, TABLE_V))
    report("C1 reference V' values", dev <= 5e-4 and elapsed < 1.0, f"max |dV'|={dev:.2e} (tol 5e-4), {elapsed:.3f}s (< 1s)")


def test_c2_table_area(report):
    t0 = time.perf_counter()
    values = [reduced_area(d).value for d in DELTAS]
    elapsed = time.perf_counter() - t0
    dev = max(abs(v - ref) for v, ref in zip(values, TABLE_A))
    report("C2 reference A' values", dev <= 5e-4 and elapsed < 1.0, f"max |dA'|={dev:.2e} (tol 5e-4), {elapsed:.3f}s (< 1s)")


def test_c3_closed_forms(report):
    v1, a1 = reduced_volume(1.0).value, reduced_area(1.0).value
    near = 1.0 - 1e-9
    dv = abs(reduced_volume(near).value - 2 / 3)
    da = abs(reduced_area(near).value - 4.0)
    ok = v1 == 2 / 3 and a1 == 4.0 and dv <= 1e-6 and da <= 1e-6
    report("C3 closed forms", ok, f"V'(1)={v1!r}, A'(1)={a1!r}, quadrature at 1-1e-9: dV={dv:.1e}, dA={da:.1e} (tol 1e-6)")


def test_c4_error_rows(report):
    v_dev = a_dev = 0.0
    for d, ve, ae in zip(DELTAS, TABLE_V_ERR, TABLE_A_ERR):
        v_dev = max(v_dev, abs(relative_error_pct(reduced_volume(d).value, approx_volume(d)) - ve))
        a_dev = max(a_dev, abs(relative_error_pct(reduced_area(d).value, approx_area(d)) - ae))
    report("C4 approximation error rows", v_dev <= 0.1 and a_dev <= 0.1, f"max dev V {v_dev:.3f} pp, A {a_dev:.3f} pp (tol 0.1 pp)")


@pytest.mark.slow
def test_c5_qmc_cross_check(report):
    t0 = time.perf_counter()
    worst_v = worst_a = 0.0
    for d in (0.25, 0.5, 0.75, 1.0):
        est = np.array([estimate_reduced(d, spec=QmcSpec(20, seed)) for seed in (0, 1, 2)])
        v_med, a_med = np.median(est, axis=0)
        worst_v = max(worst_v, abs(v_med / reduced_volume(d).value - 1))
        worst_a = max(worst_a, abs(a_med / reduced_area(d).value - 1))
    elapsed = time.perf_counter() - t0
    ok = worst_v <= 0.015 and worst_a <= 0.015 and elapsed < 30
    report("C5 QMC vs quadrature", ok, f"max rel dev V {worst_v:.2e}, A {worst_a:.2e} (tol 1.5e-2), {elapsed:.1f}s (< 30s)")


def test_c6_sobol_net(report):
    pts = sobol_points(2, 10)
    counts = np.zeros((32, 32), dtype=int)
    cells = np.floor(pts * 32).astype(int)
    np.add.at(counts, (cells[:, 0], cells[:, 1]), 1)
    report("C6 Sobol (0,10,2)-net", bool(np.all(counts == 1)), f"box counts min={counts.min()} max={counts.max()} over 1024 boxes")


def test_c7_property_suite(report, rng):
    failures = []

    grid = np.linspace(0, 1, 101)
    v = np.array([reduced_volume(d).value for d in grid])
    a = np.array([reduced_area(d).value for d in grid])
    if not (np.all(np.diff(v) > 0) and np.all(np.diff(a) > 0)):
        failures.append("monotonicity")

    seam = abs(reduced_area(0.5).value - reduced_area(0.5 + 1e-9).value)
    if not seam < 1e-6:
        failures.append(f"branch continuity {seam:.1e}")

    deltas = rng.uniform(0, 1, 1000)
    ys = rng.uniform(0, 1, 1000) * deltas / 2
    ident = max(
        abs((cross_section_width(y, d) * cross_section_depth(y, d)) ** 2 - 16 * volume_radicand(y, d))
        for y, d in zip(ys, deltas)
    )
    if not ident <= 1e-12:
        failures.append(f"integrand identity {ident:.1e}")

    c1, c2 = build_reduced_pair(ReducedConfig(0.6))
    spec = QmcSpec(14, 3)
    base_v = estimate_intersection_volume(c1, c2, spec).value
    base_a = estimate_intersection_area(c1, c2, spec).value
    s = 2.0
    big_v = estimate_intersection_volume(c1.scaled(s), c2.scaled(s), spec).value
    big_a = estimate_intersection_area(c1.scaled(s), c2.scaled(s), spec).value
    if not (big_v == base_v * s**3 and big_a == base_a * s**2):
        failures.append("scale equivariance")

    seg = ((0, 0, 0), (1, 0, 0))
    got = [point_to_segment_distance(p, *seg) for p in ((0.5, 1, 0), (2, 0, 0), (-3, 4, 0))]
    if got != [1.0, 1.0, 5.0]:
        failures.append(f"point-to-segment {got}")

    detail = "all properties hold" if not failures else "failed: " + ", ".join(failures)
    report("C7 property suite", not failures, f"{detail} (identity max {ident:.1e}, seam {seam:.1e})")


def test_c8_sweep_determinism(report, capsys):
    argv = ["sweep", "--from", "0", "--to", "1", "--steps", "5", "--qmc", "12", "--seed", "42"]
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv)
    second = capsys.readouterr().out
    same = first.encode() == second.encode()
    report("C8 sweep determinism", same and len(first) > 0, f"two runs byte-identical: {same} ({len(first)} bytes)")
