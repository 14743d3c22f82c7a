"""A reproducible battery of numerical bound checks.

:func:`run_bound_suite` draws seeded random instances and returns a flat list
of :class:`~superres.bounds.BoundReport`. Each report is a hard assertion; a
single unsatisfied report means some implemented inequality failed.
"""

import numpy as np

from .bounds import (
    BoundReport,
    check_bauer_fike,
    check_clumps_scaling,
    check_md_relation,
    check_moitra,
    check_u0_bound,
    gaussian_hankel_mean_bound,
    predicted_error_bounds,
    sigma_min_vandermonde,
    signal_basis,
    error_bound_constants,
    well_separated_error_bound,
)
from .errors import ParameterError
from .estimators import esprit
from .forward import (
    complex_gaussian,
    fourier_coefficients,
    hankel,
    noise_rng,
    verify_vandermonde_factorization,
)
from .linalg import singular_values
from .measures import AtomicMeasure, ClumpsConfig, generate_clumps, min_separation
from .metrics import matching_distance
from .uncertainty import (
    complex_uncertainty_bound,
    count_nonzero_coefficients,
    real_uncertainty_bound,
    separated_uncertainty_bound,
    uncertainty_constant,
    vanishing_polynomial_sup,
)

__all__ = [
    "random_support",
    "random_separated_support",
    "default_uncertainty_pairs",
    "run_bound_suite",
    "broken_moitra",
    "PROFILES",
]

PROFILES = {
    "desk": {"instances": 100, "uncertainty_draws": 1000, "noisy_runs": 200, "hankel_trials": 200},
    "paper": {"instances": 1000, "uncertainty_draws": 10000, "noisy_runs": 2000, "hankel_trials": 2000},
}


def random_support(rng, S, min_gap=1e-3):
    """``S`` uniform torus points, redrawn until pairwise gaps exceed ``min_gap``."""
    while True:
        omega = rng.random(S)
        if S == 1 or min_separation(omega) > min_gap:
            return omega


def random_separated_support(rng, S, delta):
    """``S`` points with minimum separation at least ``delta``.

    Sorted uniform spacings are inflated by ``delta`` and rescaled to the torus.
    """
    if S * delta >= 1:
        raise ParameterError("cannot place S points with that separation")
    slack = rng.dirichlet(np.ones(S)) * (1 - S * delta)
    gaps = delta + slack
    return (rng.random() + np.concatenate([[0.0], np.cumsum(gaps)[:-1]])) % 1.0


def _unit_phases(rng, S):
    return np.exp(2j * np.pi * rng.random(S))


def default_uncertainty_pairs():
    return [(S, N) for S in range(2, 6) for N in range(S + 1, 4 * S + 1)]


def broken_moitra(omega, M):
    """Deliberately wrong check (``sigma_S`` in place of ``sigma_S^2``).

    Used to confirm the suite reports failures; it is violated whenever
    ``(C - 1) / C * M > sigma_S``, which holds for any sizeable ``M``.
    """
    C = min_separation(omega) * M
    s = sigma_min_vandermonde(omega, M)
    return BoundReport("moitra_wrong_exponent", (C - 1) / C * M, s, context={"C": C, "M": M})


def _noiseless_reports(rng, n):
    out = []
    for _ in range(n):
        S = int(rng.integers(1, 7))
        M = 4 * S
        L = M // 2
        omega = random_support(rng, S)
        x = _unit_phases(rng, S)
        mu = AtomicMeasure(omega, x)
        y0 = fourier_coefficients(mu, M)
        s_phi = sigma_min_vandermonde(omega, L)
        if s_phi > 1e-10:
            est = esprit(y0, S, L)
            out.append(BoundReport("noiseless_exactness", matching_distance(omega, est.support_estimate),
                                   1e-6, tol=0.0, context={"S": S, "M": M}))
        out.append(check_u0_bound(signal_basis(omega, L), s_phi, S))
        H0 = hankel(y0, L)
        res = verify_vandermonde_factorization(mu, M, L)
        out.append(BoundReport("vandermonde_factorization", res / np.linalg.norm(H0), 1e-10,
                               tol=0.0, context={"S": S, "M": M}))
    return out


def _moitra_reports(rng, n, M=100, broken=False):
    out = []
    for _ in range(n):
        S = int(rng.integers(2, 11))
        C = 2.0 + 3.0 * rng.random()
        omega = random_separated_support(rng, S, C / M)
        out.append(check_moitra(omega, M))
        if broken:
            out.append(broken_moitra(omega, M))
    return out


def _clumps_reports(srf_grid=np.geomspace(2, 10, 9)):
    out = []
    for sizes in [(2,), (3,), (2, 2), (3, 3)]:
        cfg = ClumpsConfig(100, sizes, 1 / 2.5, 10.0)
        fit = check_clumps_scaling(cfg, srf_grid)
        lam = max(sizes)
        out.append(BoundReport("clumps_slope", abs(fit.slope + (lam - 1)), 0.15, tol=0.0,
                               context={"A": len(sizes), "lam": lam, "slope": fit.slope}))
        for value in fit.srf:
            c = cfg.with_srf(value)
            omega = generate_clumps(c, 0)
            L = c.M // 2
            out.append(check_u0_bound(signal_basis(omega, L), sigma_min_vandermonde(omega, L), c.S))
    return out


def _noisy_reports(rng, n):
    out = []
    for _ in range(n):
        S = int(rng.integers(1, 5))
        M = 40 + 2 * int(rng.integers(0, 21))
        L = M // 2
        if S > 1:
            omega = random_separated_support(rng, S, (1 + 5 * rng.random()) / M)
        else:
            omega = rng.random(1)
        x = _unit_phases(rng, S) * (0.5 + rng.random(S))
        mu = AtomicMeasure(omega, x)
        consts = error_bound_constants(mu, M, L)
        sigma = 10.0 ** rng.uniform(-6, -1)
        eta = complex_gaussian(rng, M + 1, sigma)
        est = esprit(fourier_coefficients(mu, M) + eta, S, L)
        md = matching_distance(omega, est.support_estimate)
        d = est.diagnostics
        ctx = {"S": S, "M": M, "sigma": sigma}
        out.append(check_md_relation(omega, est.support_estimate, np.exp(-2j * np.pi * omega),
                                     d.raw_eigenvalues))
        out.append(check_bauer_fike(omega, est.support_estimate, signal_basis(omega, L), d.basis,
                                    consts["sigma_phi_L"]))
        hnorm = float(singular_values(hankel(eta, L))[0])
        for regime, bound in predicted_error_bounds(mu, M, L, hnorm, consts).items():
            out.append(BoundReport(f"error_bound_{regime}", md, bound, context=ctx))
        ws = well_separated_error_bound(mu, M, hnorm) if S > 1 else None
        if ws is not None:
            out.append(BoundReport("well_separated", md, ws, context=ctx))
    return out


def _uncertainty_reports(rng, draws, pairs):
    out = []
    by_S = {}
    for S, N in pairs:
        by_S.setdefault(S, []).append(N)
    for S, Ns in sorted(by_S.items()):
        worst_c = worst_r = 0.0
        worst_sep = -np.inf
        count_ok = True
        for i in range(draws):
            N = Ns[i % len(Ns)]
            omega = random_support(rng, S, 1e-9)
            worst_c = max(worst_c, uncertainty_constant(AtomicMeasure(omega, _unit_phases(rng, S)), N))
            real = AtomicMeasure(omega, rng.standard_normal(S))
            worst_r = max(worst_r, uncertainty_constant(real, N))
            start = int(rng.integers(-50, 50))
            count_ok &= count_nonzero_coefficients(real, range(start, start + N)) >= N // S
            if N > 2 and S / (N - 1) < 0.5:
                C = 1.0 + 2.0 * rng.random() + 1e-3
                if S * C / (N - 1) < 1:
                    sep = AtomicMeasure(random_separated_support(rng, S, C / (N - 1)),
                                        _unit_phases(rng, S))
                    worst_sep = max(worst_sep, uncertainty_constant(sep, N)
                                    - separated_uncertainty_bound(C, S, N))
        ctx = {"S": S, "draws": draws}
        out.append(BoundReport("uncertainty_complex", worst_c, complex_uncertainty_bound(S), context=ctx))
        out.append(BoundReport("uncertainty_real", worst_r, real_uncertainty_bound(S), context=ctx))
        out.append(BoundReport("nonzero_count", 0.0 if count_ok else 1.0, 0.0, tol=0.0, context=ctx))
        if np.isfinite(worst_sep):
            out.append(BoundReport("uncertainty_separated", worst_sep, 0.0, context=ctx))
        omega = random_support(rng, S)
        out.append(BoundReport("vanishing_polynomial_sup", vanishing_polynomial_sup(omega), 2.0**S,
                               context={"S": S}))
    for N in (2, 5, 17):
        c = uncertainty_constant(AtomicMeasure([rng.random()], [_unit_phases(rng, 1)[0]]), N)
        out.append(BoundReport("single_atom", abs(c - 1 / np.sqrt(N)), 1e-12, tol=0.0, context={"N": N}))
    return out


def _hankel_report(rng, trials, M=100, L=50, sigma=1.0):
    norms = [singular_values(hankel(complex_gaussian(rng, M + 1, sigma), L))[0] for _ in range(trials)]
    return BoundReport("gaussian_hankel_mean", float(np.mean(norms)),
                       float(gaussian_hankel_mean_bound(M, L, sigma)),
                       context={"M": M, "L": L, "sigma": sigma, "trials": trials})


def run_bound_suite(seed=0, profile="desk", inject_broken=False, uncertainty_pairs=None):
    """Run every bound check and return the list of reports.

    Parameters
    ----------
    seed : int
        Master seed; each block draws from its own child stream.
    profile : {"desk", "paper"}
        Instance counts, see :data:`PROFILES`.
    inject_broken : bool
        Add a deliberately wrong check so callers can test failure handling.
    uncertainty_pairs : list of (S, N), optional
        Defaults to ``S = 2..5`` with ``N = S+1..4S``. Pairs with ``N < S``
        are rejected before anything runs.
    """
    if profile not in PROFILES:
        raise ParameterError(f"unknown profile {profile!r}")
    pairs = default_uncertainty_pairs() if uncertainty_pairs is None else list(uncertainty_pairs)
    for S, N in pairs:
        if N < S:
            raise ParameterError(f"uncertainty constant may be infinite below N = S (S={S}, N={N})")
    cfg = PROFILES[profile]
    streams = [noise_rng((seed, block)) for block in range(6)]
    reports = []
    reports += _noiseless_reports(streams[0], cfg["instances"])
    reports += _moitra_reports(streams[1], 50, broken=inject_broken)
    reports += _clumps_reports()
    reports += _noisy_reports(streams[2], cfg["noisy_runs"])
    reports += _uncertainty_reports(streams[3], cfg["uncertainty_draws"], pairs)
    reports.append(_hankel_report(streams[4], cfg["hankel_trials"]))
    return reports
