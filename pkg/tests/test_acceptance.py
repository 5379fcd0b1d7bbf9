"""Acceptance suite: one test per shipped criterion, each printing a
pass/fail line (run with ``pytest -s tests/test_acceptance.py`` to see them).

Expected values come from three sources: closed-form constants of the
invariant-region construction, hand-derived geometry (analytic ellipse,
interval arithmetic), and independent brute-force oracles (digit
enumerations in conftest). Stated runtime budgets are asserted too.
"""

import math
import time

import numpy as np

import ifs_chisel as ic
from ifs_chisel.cli import run
from conftest import (
    TRIANGLE,
    cantor_endpoints,
    random_similitude_system,
    sierpinski_address_points,
)


def report(num, name, ok, detail=""):
    line = f"[acceptance] {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_01_worked_example_constants():
    t0 = time.perf_counter()
    system = ic.builtin("paper-example")
    ellipse = ic.ellipse_params(system)
    ok = (
        abs(ellipse.lambda_max - 0.6) <= 1e-12
        and abs(ellipse.d_max - 1.0) <= 1e-12
        and abs(ellipse.m_threshold - 4.0) <= 1e-12
    )
    # 64 points on the analytic boundary (x - 1/2)^2/4 + y^2/(15/4) = 1.
    t = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    boundary = np.column_stack(
        [0.5 + 2.0 * np.cos(t), (math.sqrt(15.0) / 2.0) * np.sin(t)]
    )
    sums = ic.distance_sum([(0.0, 0.0), (1.0, 0.0)], boundary)
    worst = float(np.max(np.abs(sums - 4.0)))
    ok = ok and worst <= 1e-9
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 0.1
    report(
        1,
        "proposition constants for the worked example",
        ok,
        f"M={ellipse.m_threshold:.15g}, boundary |sum-4| max {worst:.2e}, {elapsed * 1e3:.1f} ms",
    )


def test_criterion_02_invariance_theorem():
    t0 = time.perf_counter()
    system = ic.builtin("paper-example")
    ellipse = ic.ellipse_params(system)
    rep = ic.verify_invariance(system, ellipse, 10_000, 1)
    ok = rep.passed and rep.worst_slack <= 1e-9 * 5.0
    rng = np.random.default_rng(20260810)
    failures = 0
    for k in range(100):
        sys_k = random_similitude_system(rng)
        rep_k = ic.verify_invariance(sys_k, ic.ellipse_params(sys_k), 1_000, 1_000 + k)
        if not rep_k.passed:
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = ok and failures == 0 and elapsed < 5.0
    report(
        2,
        "invariance holds on sampled regions",
        ok,
        f"worst slack {rep.worst_slack:.2e}, {failures} failures in 100 systems, {elapsed:.2f} s",
    )


def test_criterion_03_unit_disk_counterexample():
    system = ic.builtin("paper-example")
    disk = ic.custom_region([(0.0, 0.0)], 1.0)
    rep = ic.verify_invariance(system, disk, 2_000, 7)
    image = ic.apply_affine(system.maps[1], (0.0, 1.0))
    norm = math.hypot(*image)
    exit_code = run(
        [
            "verify",
            "--builtin",
            "paper-example",
            "--samples",
            "2000",
            "--seed",
            "7",
            "--focus",
            "0,0",
            "--threshold",
            "1",
        ]
    )
    ok = (not rep.passed) and norm > 1.13 and exit_code == 2
    report(
        3,
        "unit disk is not invariant",
        ok,
        f"|f2(0,1)| = {norm:.6f}, exit code {exit_code}",
    )


def test_criterion_04_cantor_deletion():
    t0 = time.perf_counter()
    system = ic.builtin("cantor")
    resolution = 2048
    cell = 2.0 / resolution
    # Strip around [-1/2, 3/2] x [-h, h] with the middle row centered on the
    # axis; M = (1 + 1/3)/(1 - 1/3) * 1 = 2 gives exactly that interval.
    half = 2.5 * cell
    b0 = ic.rasterize_region(
        lambda p: np.ones(len(p), bool), ic.Box(-0.5, -half, 1.5, half), resolution
    )
    trace = ic.deletion_iterate(system, b0, 8)
    nesting_ok = all(trace.nesting_ok)
    xs = ic.raster_points(trace.stages[-1])[:, 0]
    extent_ok = abs(xs.min() - 0.0) <= 2 * cell and abs(xs.max() - 1.0) <= 2 * cell
    in_gap = int(np.count_nonzero((xs >= 1.0 / 3.0) & (xs <= 2.0 / 3.0)))
    elapsed = time.perf_counter() - t0
    ok = nesting_ok and extent_ok and in_gap <= 2 and elapsed < 10.0
    report(
        4,
        "deletion chain chisels the middle thirds",
        ok,
        f"extent [{xs.min():.5f}, {xs.max():.5f}], {in_gap} gap cells, {elapsed:.2f} s",
    )


def test_criterion_05_forward_convergence_rates():
    t0 = time.perf_counter()
    cases = [
        ("cantor", (0.0, 0.0), 1.0 / 3.0),
        ("sierpinski", (0.0, 0.0), 0.5),
        ("paper-example", (1.0, 1.0), 0.6),
    ]
    ok = True
    worst = []
    for name, seed, lam in cases:
        trace = ic.forward_iterate(ic.builtin(name), [seed], 10)
        rep = ic.convergence_report(trace, lam)
        ok = ok and rep.passed and all(r <= lam + 0.05 for r in rep.ratios)
        worst.append(max(rep.ratios))
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 5.0
    report(
        5,
        "consecutive-distance ratios stay within lambda + 0.05",
        ok,
        "worst ratios " + ", ".join(f"{w:.3f}" for w in worst) + f", {elapsed:.2f} s",
    )


def test_criterion_06_tenth_iteration_stays_inside():
    system = ic.builtin("paper-example")
    ellipse = ic.ellipse_params(system)
    trace = ic.forward_iterate(system, [(1.0, 1.0)], 10)
    ok = len(trace.stages[-1]) == 1024
    checked = 0
    for k in range(1, len(trace.stages)):
        prev_inside = bool(
            np.all(ic.distance_sum(ellipse.foci, trace.stages[k - 1]) <= ellipse.m_threshold)
        )
        if prev_inside:
            sums = ic.distance_sum(ellipse.foci, trace.stages[k])
            ok = ok and bool(np.all(sums <= ellipse.m_threshold + 1e-9))
            checked += 1
    ok = ok and checked == 10  # the seed (1, 1) already lies inside
    report(
        6,
        "tenth iteration has 1024 points inside the region",
        ok,
        f"{len(trace.stages[-1])} points, {checked} contained stages",
    )


def test_criterion_07_attractor_oracle_equivalence():
    t0 = time.perf_counter()
    cantor_est = ic.attractor_estimate(ic.builtin("cantor"), 1e-3, (0.0, 0.0))
    d_cantor = ic.hausdorff_distance(cantor_est, cantor_endpoints(12))
    sierp_est = ic.attractor_estimate(ic.builtin("sierpinski"), 1e-2, (0.0, 0.0))
    d_sierp = ic.hausdorff_distance(sierp_est, sierpinski_address_points(10))
    elapsed = time.perf_counter() - t0
    ok = d_cantor <= 1e-3 + 1e-6 and d_sierp <= 1e-2 + 1e-6 and elapsed < 10.0
    report(
        7,
        "estimates match brute-force attractor oracles",
        ok,
        f"cantor {d_cantor:.2e}, sierpinski {d_sierp:.2e}, {elapsed:.2f} s",
    )


def test_criterion_08_sierpinski_constant():
    ellipse = ic.ellipse_params(ic.builtin("sierpinski"))
    ok = abs(ellipse.m_threshold - 6.0) <= 1e-12
    report(8, "triangle system threshold M = 6", ok, f"M = {ellipse.m_threshold!r}")


def test_criterion_09_closing_locus():
    box = ic.Box(-0.45, -0.42, 1.47, 1.13)
    result = ic.render_locus(TRIANGLE, 2.0, box, 512)
    occ, edge = result.region.occupancy, result.boundary.occupancy
    cell = result.region.cell_size
    ok = True
    for vx, vy in TRIANGLE:
        i = int((vx - box.x0) / cell)
        j = int((vy - box.y0) / cell)
        ok = ok and bool(occ[j, i]) and bool(edge[j, i])
    cx, cy = TRIANGLE.mean(axis=0)
    i = int((cx - box.x0) / cell)
    j = int((cy - box.y0) / cell)
    ok = ok and bool(occ[j, i]) and not bool(edge[j, i])
    two_foci = ic.render_locus(
        [(0.0, 0.0), (1.0, 0.0)], 4.0, ic.Box(-2.0, -2.2, 3.0, 2.2), 512
    )
    area = two_foci.region.marked_count * two_foci.region.cell_size**2
    exact = math.pi * 2.0 * (math.sqrt(15.0) / 2.0)
    rel = abs(area - exact) / exact
    ok = ok and rel < 0.01
    report(
        9,
        "distance-sum-2 locus around the unit triangle",
        ok,
        f"vertices on contour, centroid interior, 2-foci area off by {rel:.2%}",
    )


def test_criterion_10_metric_axioms():
    rng = np.random.default_rng(99)
    ok = True
    for _ in range(1_000):
        a, b, c = (
            rng.normal(scale=2.0, size=(int(rng.integers(1, 30)), 2)) for _ in range(3)
        )
        dab = ic.hausdorff_distance(a, b)
        ok = ok and dab == ic.hausdorff_distance(b, a)
        ok = ok and ic.hausdorff_distance(a, a) == 0.0
        ok = ok and ic.hausdorff_distance(a, c) <= dab + ic.hausdorff_distance(b, c) + 1e-12
        if not ok:
            break
    exact_matches = 0
    for _ in range(100):
        a = rng.normal(size=(int(rng.integers(1, 200)), 2))
        b = rng.normal(size=(int(rng.integers(1, 200)), 2))
        if ic.hausdorff_distance(a, b, method="kdtree") == ic.hausdorff_distance(
            a, b, method="bruteforce"
        ):
            exact_matches += 1
    ok = ok and exact_matches == 100
    report(
        10,
        "Hausdorff metric axioms and accelerator agreement",
        ok,
        f"{exact_matches}/100 accelerated results bit-exact",
    )


def test_criterion_11_format_golden_files():
    single = ic.Raster((0.0, 0.0), 1.0, np.array([[True]]))
    wide = ic.Raster((0.0, 0.0), 1.0, np.array([[True, False]]))
    square = ic.Raster((0.0, 0.0), 1.0, np.array([[True, False], [False, False]]))
    ok = (
        ic.pbm_bytes(single) == b"P1\n# ifs-chisel\n1 1\n1\n"
        and ic.pbm_bytes(wide) == b"P1\n# ifs-chisel\n2 1\n1 0\n"
        and ic.pbm_bytes(square) == b"P1\n# ifs-chisel\n2 2\n0 0\n1 0\n"
        and ic.points_csv_bytes([(1.0, 1.0)]) == b"x,y\n1,1\n"
        and ic.points_csv_bytes(np.empty((0, 2))) == b"x,y\n"
        and ic.points_csv_bytes([(0.5, 0.25)]) == b"x,y\n0.5,0.25\n"
    )
    report(11, "PBM and CSV emissions match golden bytes", ok)
