"""Acceptance criteria 1-13, one test each.

Every test prints a single ``[PASS]`` / ``[FAIL]`` line with the measured
quantity, even under output capture. Run alone with::

    pytest tests/test_acceptance.py -v
"""

import time

import numpy as np
import pytest

from superres import io
from superres.bounds import (
    check_clumps_scaling,
    check_md_relation,
    check_moitra,
    check_u0_bound,
    gaussian_hankel_mean_bound,
    sigma_min_vandermonde,
    signal_basis,
)
from superres.estimators import esprit
from superres.experiments import desk_profile, extract_transition_curve, fit_transition_slope, run_sweep
from superres.forward import complex_gaussian, fourier_coefficients, hankel, verify_vandermonde_factorization
from superres.linalg import singular_values
from superres.measures import AtomicMeasure, ClumpsConfig, generate_clumps
from superres.metrics import matching_distance
from superres.uncertainty import (
    complex_uncertainty_bound,
    count_nonzero_coefficients,
    real_uncertainty_bound,
    uncertainty_constant,
)
from superres.verification import random_separated_support, random_support

U0_REPORTS = []  # noiseless U0 checks gathered by criteria 1 and 4
MD_REPORTS = []  # md relation checks gathered by criterion 1


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def desk_sweeps():
    out = {}
    for sizes in [(2,), (2, 2)]:
        t0 = time.perf_counter()
        res = run_sweep(desk_profile(sizes, master_seed=0), check_bounds=True, threads=4)
        out[sizes] = (res, time.perf_counter() - t0)
    return out


def test_criterion_01_noiseless_exactness(capsys):
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    worst, excluded = 0.0, 0
    for _ in range(100):
        S = int(rng.integers(1, 7))
        M = 4 * S
        L = M // 2
        omega = random_support(rng, S)
        x = np.exp(2j * np.pi * rng.random(S))
        y = fourier_coefficients(AtomicMeasure(omega, x), M)
        s_phi = sigma_min_vandermonde(omega, L)
        U0_REPORTS.append(check_u0_bound(signal_basis(omega, L), s_phi, S))
        if s_phi <= 1e-10:
            excluded += 1
            continue
        res = esprit(y, S, L)
        worst = max(worst, matching_distance(omega, res.support_estimate))
        MD_REPORTS.append(check_md_relation(omega, res.support_estimate, np.exp(-2j * np.pi * omega),
                                            res.diagnostics.raw_eigenvalues))
    elapsed = time.perf_counter() - t0
    report(capsys, 1, worst <= 1e-6 and elapsed < 10,
           f"max md = {worst:.2e} <= 1e-6 over {100 - excluded} instances ({excluded} excluded), {elapsed:.2f} s")


def test_criterion_02_vandermonde_factorization(capsys):
    rng = np.random.default_rng(102)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(50):
        S = int(rng.integers(1, 8))
        M = int(rng.integers(2 * S, 60))
        L = int(rng.integers(S, M + 2 - S))
        mu = AtomicMeasure(random_support(rng, S), rng.standard_normal(S) + 1j * rng.standard_normal(S))
        H = hankel(fourier_coefficients(mu, M), L)
        worst = max(worst, verify_vandermonde_factorization(mu, M, L) / np.linalg.norm(H))
    elapsed = time.perf_counter() - t0
    report(capsys, 2, worst <= 1e-10 and elapsed < 5,
           f"max relative residual = {worst:.2e} <= 1e-10, {elapsed:.2f} s")


def test_criterion_03_moitra_bound(capsys):
    rng = np.random.default_rng(103)
    M = 100
    reports = []
    for _ in range(50):
        S = int(rng.integers(2, 16))
        omega = random_separated_support(rng, S, (2 + 2 * rng.random()) / M)
        reports.append(check_moitra(omega, M))
    bad = sum(not r.satisfied for r in reports)
    tight = min(r.rhs / r.lhs for r in reports)
    report(capsys, 3, bad == 0, f"{bad} violations in 50 supports (min sigma_S^2 / bound = {tight:.3f})")


def test_criterion_04_clumps_scaling(capsys):
    t0 = time.perf_counter()
    grid = np.geomspace(2, 10, 9)
    slopes, ok = {}, True
    for sizes in [(2,), (3,), (2, 2), (3, 3)]:
        lam = max(sizes)
        cfg = ClumpsConfig(100, sizes, 1 / 2.5, 10.0)
        fit = check_clumps_scaling(cfg, grid)
        slopes[(len(sizes), lam)] = fit.slope
        ok &= abs(fit.slope + (lam - 1)) <= 0.15
        for value in fit.srf:
            omega = generate_clumps(cfg.with_srf(value), 0)
            U0_REPORTS.append(check_u0_bound(signal_basis(omega, 50), sigma_min_vandermonde(omega, 50), cfg.S))
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"(A={a}, lam={l}) slope {s:+.3f}" for (a, l), s in slopes.items())
    report(capsys, 4, ok and elapsed < 30, f"{detail}; target -(lam-1) +/- 0.15, {elapsed:.2f} s")


def test_criterion_05_u0_bound(capsys):
    assert U0_REPORTS, "criteria 1 and 4 must run first"
    bad = sum(not r.satisfied for r in U0_REPORTS)
    report(capsys, 5, bad == 0, f"{bad} violations in {len(U0_REPORTS)} noiseless runs")


def test_criterion_06_error_bound_consistency(capsys, desk_sweeps):
    lines, bad = [], 0
    for sizes, (res, _) in desk_sweeps.items():
        t = res.bounds
        for regime in ("moderate", "small"):
            key = f"error_bound_{regime}"
            n, v = t.checked.get(key, 0), t.violations.get(key, 0)
            bad += v
            lines.append(f"{sizes} {regime}: {v}/{n}")
    report(capsys, 6, bad == 0, "violations/applicable runs " + "; ".join(lines))


def test_criterion_07_md_relation(capsys, desk_sweeps):
    n = len(MD_REPORTS)
    bad = sum(not r.satisfied for r in MD_REPORTS)
    for res, _ in desk_sweeps.values():
        n += res.bounds.checked["md_relation"]
        bad += res.bounds.violations["md_relation"]
    report(capsys, 7, bad == 0 and n > 0, f"{bad} violations in {n} ESPRIT runs")


def test_criterion_08_matching_oracle(capsys):
    rng = np.random.default_rng(108)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        a, b = rng.random((2, 7))
        mismatches += matching_distance(a, b, "bottleneck") != matching_distance(a, b, "brute")
    elapsed = time.perf_counter() - t0
    report(capsys, 8, mismatches == 0 and elapsed < 5, f"{mismatches} mismatches in 200 instances, {elapsed:.2f} s")


def _uncertainty_support(rng, S):
    # half uniform draws, half a tight clump of spacing below 1/N
    if rng.random() < 0.5:
        return random_support(rng, S, 1e-9)
    return (rng.random() + np.arange(S) * 10 ** rng.uniform(-4, -1)) % 1.0


def test_criterion_09_uncertainty(capsys):
    rng = np.random.default_rng(109)
    t0 = time.perf_counter()
    parts, ok = [], True
    for S in range(2, 6):
        cmax = rmax = 0.0
        for _ in range(1000):
            N = int(rng.integers(S + 1, 4 * S + 1))
            omega = _uncertainty_support(rng, S)
            cmax = max(cmax, uncertainty_constant(AtomicMeasure(omega, np.exp(2j * np.pi * rng.random(S))), N))
            rmax = max(rmax, uncertainty_constant(AtomicMeasure(omega, rng.standard_normal(S)), N))
        ok &= cmax <= complex_uncertainty_bound(S) and rmax <= real_uncertainty_bound(S)
        parts.append(f"S={S}: {cmax:.4f}<={complex_uncertainty_bound(S):.4f}, {rmax:.4f}<={real_uncertainty_bound(S):.4f}")
    single = max(abs(uncertainty_constant(AtomicMeasure([rng.random()], [1j]), N) - 1 / np.sqrt(N))
                 for N in range(1, 40))
    collapse = 0.0
    for S in range(2, 6):
        for N in (S, 2 * S, 4 * S):
            mu = AtomicMeasure(rng.random(S), np.exp(2j * np.pi * rng.random(S)))
            collapse = max(collapse, abs(uncertainty_constant(mu.scaled_support(1e-6), N) - 1 / np.sqrt(N)))
    elapsed = time.perf_counter() - t0
    ok &= single <= 1e-12 and collapse <= 1e-3 and elapsed < 60
    report(capsys, 9, ok, "; ".join(parts)
           + f"; S=1 error {single:.1e}; collapse error {collapse:.1e}; {elapsed:.1f} s")


def test_criterion_10_nonzero_count(capsys):
    rng = np.random.default_rng(110)
    bad = 0
    for _ in range(500):
        S = int(rng.integers(1, 7))
        N = int(rng.integers(S, 4 * S + 1))
        x = rng.standard_normal(S) + 1j * rng.standard_normal(S) * (rng.random() < 0.5)
        mu = AtomicMeasure(_uncertainty_support(rng, S), x)
        start = int(rng.integers(-100, 100))
        bad += count_nonzero_coefficients(mu, range(start, start + N)) < N // S
    report(capsys, 10, bad == 0, f"{bad} violations of count >= floor(N/S) in 500 instances")


def test_criterion_11_gaussian_hankel(capsys):
    rng = np.random.default_rng(111)
    norms = [singular_values(hankel(complex_gaussian(rng, 101, 1.0), 50))[0] for _ in range(200)]
    bound = gaussian_hankel_mean_bound(100, 50, 1.0)
    mean = float(np.mean(norms))
    report(capsys, 11, mean <= bound, f"mean |H(eta)|_2 = {mean:.3f} <= {bound:.3f}")


def test_criterion_12_transition_slopes(capsys, desk_sweeps):
    parts, ok, total = [], True, 0.0
    for sizes, (res, elapsed) in desk_sweeps.items():
        total += elapsed
        fit = fit_transition_slope(extract_transition_curve(res))
        target = 2 * max(sizes) - 2
        ok &= abs(fit.q - target) <= 1.0
        parts.append(f"(A={len(sizes)}, lam={max(sizes)}) q = {fit.q:.3f} (r2 {fit.r2:.3f}), target {target} +/- 1")
    ok &= total < 15 * 60
    report(capsys, 12, ok, "; ".join(parts) + f"; {total:.1f} s")


def test_criterion_13_determinism(capsys, tmp_path, desk_sweeps):
    first, _ = desk_sweeps[(2,)]
    again = run_sweep(desk_profile((2,), master_seed=0), threads=1)
    curve_a, curve_b = extract_transition_curve(first), extract_transition_curve(again)
    a = [io.write_cells(tmp_path / "a_cells.csv", first), io.write_curve(tmp_path / "a_curve.csv", curve_a)]
    b = [io.write_cells(tmp_path / "b_cells.csv", again), io.write_curve(tmp_path / "b_curve.csv", curve_b)]
    same = all(p.read_bytes() == q.read_bytes() for p, q in zip(a, b))
    report(capsys, 13, same, "repeated desk sweep CSVs are byte-identical" if same else "CSV bytes differ")
