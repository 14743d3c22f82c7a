"""Monte-Carlo harness for support-error scaling and phase-transition sweeps.

A sweep visits every (SRF, sigma) cell. For each cell and each of
``phase_draws`` random unit-modulus amplitude vectors it runs
``trials_per_cell`` noise realisations. Cells report the worst phase draw:
the largest mean matching distance and the smallest success rate, where a
trial succeeds when ``md <= Delta / 2``.

Random streams are keyed by ``(master_seed, stream, srf_index, ...)`` via
:class:`numpy.random.SeedSequence`, so results do not depend on execution
order or on the number of worker threads.
"""

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.stats import spearmanr

from .bounds import (
    check_bauer_fike,
    check_md_relation,
    check_u0_bound,
    predicted_error_bounds,
    signal_basis,
    error_bound_constants,
)
from .errors import ConvergenceError, EstimatorError, ParameterError
from .estimators import esprit, music
from .forward import check_L, complex_gaussian, hankel, noise_rng, vandermonde
from .linalg import singular_values
from .measures import AtomicMeasure, ClumpsConfig, generate_clumps, min_separation
from .metrics import matching_distance

__all__ = [
    "SweepSpec",
    "CellRecord",
    "BoundTally",
    "SweepResult",
    "run_sweep",
    "TransitionPoint",
    "extract_transition_curve",
    "TransitionFit",
    "fit_transition_slope",
    "fit_md_scaling",
    "success_monotonicity",
    "desk_profile",
    "paper_profile",
    "SWEEP_METADATA",
]

# stream tags for the hierarchical RNG keys
_PHASE_STREAM, _NOISE_STREAM = 1, 2

SWEEP_METADATA = {
    "noise": "circular complex Gaussian, E|eta_k|^2 = sigma^2",
    "aggregation": "worst phase draw for both mean_md and success_rate",
    "failure_sentinel": "estimator errors count as failed trials with md = inf",
    "success": "md <= Delta/2",
}


def _strictly_monotone(values):
    d = np.diff(np.asarray(values, dtype=float))
    return bool(np.all(d > 0) or np.all(d < 0))


@dataclass(frozen=True)
class SweepSpec:
    """Grid and Monte-Carlo sizes of a sweep.

    ``clumps`` is a template whose ``alpha`` is replaced by ``1 / srf`` for
    each grid column.
    """

    M: int
    L: int
    clumps: ClumpsConfig
    srf_grid: tuple
    sigma_grid: tuple
    trials_per_cell: int = 20
    phase_draws: int = 4
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "srf_grid", tuple(float(v) for v in self.srf_grid))
        object.__setattr__(self, "sigma_grid", tuple(float(v) for v in self.sigma_grid))
        if not self.srf_grid or not self.sigma_grid:
            raise ParameterError("sweep grids must be non-empty")
        for name in ("srf_grid", "sigma_grid"):
            if not _strictly_monotone(getattr(self, name)):
                raise ParameterError(f"{name} must be strictly monotone")
        if min(self.sigma_grid) < 0 or min(self.srf_grid) <= 0:
            raise ParameterError("sigma must be non-negative and SRF positive")
        if self.trials_per_cell < 1 or self.phase_draws < 1:
            raise ParameterError("trials_per_cell and phase_draws must be at least 1")
        if self.clumps.M != self.M:
            raise ParameterError("clumps template must use the sweep's M")
        check_L(self.clumps.S, self.L, self.M)
        for value in self.srf_grid:
            self.clumps.with_srf(value)

    @property
    def S(self):
        return self.clumps.S


class CellRecord(NamedTuple):
    srf_index: int
    sigma_index: int
    srf: float
    sigma: float
    phase_draw: int
    mean_md: float
    success_rate: float
    failures: int


@dataclass
class BoundTally:
    """Per-trial bound checks accumulated over a sweep (ESPRIT only).

    ``checked`` counts trials where a bound applied, ``violations`` those
    where it failed; ``worst`` keeps the largest ``lhs / rhs`` seen.
    """

    checked: dict = field(default_factory=dict)
    violations: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)

    def add(self, name, report_or_pair):
        if hasattr(report_or_pair, "satisfied"):
            lhs, rhs, ok = report_or_pair.lhs, report_or_pair.rhs, report_or_pair.satisfied
        else:
            lhs, rhs = report_or_pair
            ok = lhs <= rhs + 1e-9
        self.checked[name] = self.checked.get(name, 0) + 1
        self.violations[name] = self.violations.get(name, 0) + (0 if ok else 1)
        ratio = lhs / rhs if rhs > 0 else (0.0 if lhs <= 1e-9 else np.inf)
        self.worst[name] = max(self.worst.get(name, 0.0), float(ratio))

    def merge(self, other):
        for name, n in other.checked.items():
            self.checked[name] = self.checked.get(name, 0) + n
            self.violations[name] = self.violations.get(name, 0) + other.violations[name]
            self.worst[name] = max(self.worst.get(name, 0.0), other.worst[name])

    @property
    def total_violations(self):
        return sum(self.violations.values())


@dataclass
class SweepResult:
    spec: SweepSpec
    estimator: str
    records: list
    supports: list
    deltas: np.ndarray
    bounds: Optional[BoundTally] = None
    metadata: dict = field(default_factory=lambda: dict(SWEEP_METADATA))

    def _grid(self, attr, reduce):
        out = np.full((len(self.spec.srf_grid), len(self.spec.sigma_grid)), np.nan)
        for r in self.records:
            cur = out[r.srf_index, r.sigma_index]
            val = getattr(r, attr)
            out[r.srf_index, r.sigma_index] = val if np.isnan(cur) else reduce(cur, val)
        return out

    def mean_md_grid(self):
        """Worst (largest) mean md over phase draws, shape ``(n_srf, n_sigma)``."""
        return self._grid("mean_md", max)

    def success_grid(self):
        """Worst (smallest) success rate over phase draws."""
        return self._grid("success_rate", min)


def _column(spec, i, estimator, check_bounds, music_grid):
    srf = spec.srf_grid[i]
    cfg = spec.clumps.with_srf(srf)
    omega = generate_clumps(cfg, spec.master_seed)
    S, M, L = spec.S, spec.M, spec.L
    delta = min_separation(omega) if S > 1 else 1.0 / (srf * M)
    Phi = vandermonde(omega, M)
    true_lams = np.exp(-2j * np.pi * omega)
    tally = BoundTally() if check_bounds else None
    consts = U_true = None
    if check_bounds:
        U_true = signal_basis(omega, L)
        consts = error_bound_constants(AtomicMeasure(omega, np.ones(S)), M, L)
        tally.add("u0_lower_bound", check_u0_bound(U_true, consts["sigma_phi_L"], S))

    records = []
    for p in range(spec.phase_draws):
        x = np.exp(2j * np.pi * noise_rng((spec.master_seed, _PHASE_STREAM, i, p)).random(S))
        y0 = Phi @ x
        for j, sigma in enumerate(spec.sigma_grid):
            mds = np.empty(spec.trials_per_cell)
            for t in range(spec.trials_per_cell):
                rng = noise_rng((spec.master_seed, _NOISE_STREAM, i, j, p, t))
                eta = complex_gaussian(rng, M + 1, sigma)
                try:
                    if estimator == "esprit":
                        est = esprit(y0 + eta, S, L)
                    else:
                        est = music(y0 + eta, S, L, grid_size=music_grid)
                except (EstimatorError, ConvergenceError):
                    mds[t] = np.inf
                    continue
                mds[t] = matching_distance(omega, est.support_estimate)
                if check_bounds and estimator == "esprit":
                    _check_trial(tally, omega, est, true_lams, eta, consts, U_true, L)
            finite = np.isfinite(mds)
            records.append(
                CellRecord(
                    i, j, srf, sigma, p,
                    float(np.mean(mds)),
                    float(np.mean(mds <= delta / 2)),
                    int(np.count_nonzero(~finite)),
                )
            )
    return records, omega, delta, tally


def _check_trial(tally, omega, est, true_lams, eta, consts, U_true, L):
    diag = est.diagnostics
    S = omega.size
    tally.add("sigma_S_U0_hat", (2.0**-S, diag.sigma_S_U0))
    tally.add(
        "md_relation",
        check_md_relation(omega, est.support_estimate, true_lams, diag.raw_eigenvalues),
    )
    md = matching_distance(omega, est.support_estimate)
    hnorm = float(singular_values(hankel(eta, L))[0]) if np.any(eta) else 0.0
    M = eta.size - 1
    regimes = predicted_error_bounds(None, M, L, hnorm, consts)
    for name, bound in regimes.items():
        tally.add(f"error_bound_{name}", (md, bound))
    tally.add("bauer_fike", check_bauer_fike(omega, est.support_estimate, U_true, diag.basis, consts["sigma_phi_L"]))


def run_sweep(spec, estimator="esprit", check_bounds=False, threads=1, music_grid=None):
    """Run the Monte-Carlo sweep described by ``spec``.

    Parameters
    ----------
    estimator : {"esprit", "music"}
    check_bounds : bool
        Also evaluate the per-trial ESPRIT bounds and tally violations.
    threads : int
        Worker threads over SRF columns; results are identical for any value.
    music_grid : int, optional
        Grid size for MUSIC (defaults to ``16 * M``).
    """
    if estimator not in ("esprit", "music"):
        raise ParameterError(f"unknown estimator {estimator!r}")
    cols = range(len(spec.srf_grid))
    args = (estimator, check_bounds, music_grid)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outs = list(pool.map(lambda i: _column(spec, i, *args), cols))
    else:
        outs = [_column(spec, i, *args) for i in cols]
    tally = None
    if check_bounds:
        tally = BoundTally()
        for out in outs:
            tally.merge(out[3])
    return SweepResult(
        spec=spec,
        estimator=estimator,
        records=[r for out in outs for r in out[0]],
        supports=[out[1] for out in outs],
        deltas=np.array([out[2] for out in outs]),
        bounds=tally,
    )


class TransitionPoint(NamedTuple):
    srf: float
    sigma_star: float
    status: str


def extract_transition_curve(result, success_level=0.95):
    """Largest grid sigma per SRF whose worst-case success rate is high enough.

    Status is ``"resolved"`` when the column succeeds at the smallest sigma
    and fails at the largest, ``"right-censored"`` when it never fails (sigma*
    is then the grid maximum) and ``"unresolved"`` otherwise (sigma* is NaN).
    """
    sigmas = np.asarray(result.spec.sigma_grid)
    succ = result.success_grid()
    order = np.argsort(sigmas)
    lo, hi = order[0], order[-1]
    curve = []
    for i, srf in enumerate(result.spec.srf_grid):
        ok = succ[i] >= success_level
        if ok.all():
            curve.append(TransitionPoint(srf, float(sigmas.max()), "right-censored"))
        elif not ok[lo] or ok[hi]:
            curve.append(TransitionPoint(srf, float("nan"), "unresolved"))
        else:
            curve.append(TransitionPoint(srf, float(sigmas[ok].max()), "resolved"))
    return curve


class TransitionFit(NamedTuple):
    slope: float
    intercept: float
    r2: float

    @property
    def q(self):
        """Empirical noise-tolerance exponent, ``sigma* ~ SRF^-q``."""
        return -self.slope


def _loglog_fit(x, y):
    lx, ly = np.log10(x), np.log10(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = np.sum((ly - ly.mean()) ** 2)
    r2 = 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0
    return TransitionFit(float(slope), float(intercept), float(r2))


def fit_transition_slope(curve):
    """Least-squares line through ``(log10 SRF, log10 sigma*)`` of resolved points."""
    pts = [(p.srf, p.sigma_star) for p in curve if p.status == "resolved"]
    if len(pts) < 3:
        raise ParameterError(f"need at least 3 resolved points, got {len(pts)}")
    x, y = np.array(pts).T
    return _loglog_fit(x, y)


def success_monotonicity(result):
    """Spearman correlation between sigma and success rate for each SRF.

    Success should fall as noise grows; a positive correlation only triggers
    a warning, since a finite number of trials can wiggle. Constant columns
    give NaN.
    """
    sigmas = np.asarray(result.spec.sigma_grid)
    rhos = []
    for i, row in enumerate(result.success_grid()):
        if np.ptp(row) == 0:
            rhos.append(float("nan"))
            continue
        rho = float(spearmanr(sigmas, row)[0])
        if rho > 0:
            warnings.warn(f"success rate increases with sigma at SRF {result.spec.srf_grid[i]:.3g}",
                          RuntimeWarning)
        rhos.append(rho)
    return np.array(rhos)


def fit_md_scaling(result, sigma_index):
    """Log-log fit of the worst mean md against SRF at one noise level."""
    md = result.mean_md_grid()[:, sigma_index]
    srf = np.asarray(result.spec.srf_grid)
    keep = np.isfinite(md) & (md > 0)
    if keep.sum() < 2:
        raise ParameterError("not enough finite md values to fit")
    return _loglog_fit(srf[keep], md[keep])


def _sigma_range(lam, srf_hi):
    # sigma* falls roughly like SRF^-(2 lam - 1) from about 10^-0.8 at SRF 2;
    # the grid brackets that band with a quarter decade to spare
    return 10.0 ** (-(2 * lam - 1) * np.log10(srf_hi) - 0.25), 10.0**-0.25


def desk_profile(clump_sizes, M=100, beta=10.0, master_seed=0, n_sigma=12, n_srf=6,
                 trials=20, phase_draws=4, srf_range=None):
    """Reduced-cost sweep used for CI: 20 trials x 4 phases, 12 x 6 grid.

    ``srf_range`` defaults to ``(2, 10)``; the lower end moves up to
    ``lam - 0.5`` when a clump of ``lam`` atoms would not fit at SRF 2.
    """
    sizes = tuple(clump_sizes)
    lam = max(sizes)
    if srf_range is None:
        srf_range = (max(2.0, lam - 0.5), 10.0)
    if not 0 < srf_range[0] < srf_range[1]:
        raise ParameterError(f"a clump of {lam} atoms leaves no SRF range below {srf_range[1]}")
    lo, hi = _sigma_range(lam, srf_range[1])
    template = ClumpsConfig(M, sizes, 1.0 / srf_range[0], beta)
    return SweepSpec(
        M=M,
        L=M // 2,
        clumps=template,
        srf_grid=tuple(np.geomspace(*srf_range, n_srf)),
        sigma_grid=tuple(np.geomspace(lo, hi, n_sigma)),
        trials_per_cell=trials,
        phase_draws=phase_draws,
        master_seed=master_seed,
    )


def paper_profile(clump_sizes, M=100, beta=10.0, master_seed=0):
    """Full-scale sweep: 100 trials x 10 phase draws on a finer grid."""
    return desk_profile(clump_sizes, M=M, beta=beta, master_seed=master_seed,
                        n_sigma=41, n_srf=10, trials=100, phase_draws=10)
