"""Atomic measures on the torus and the separated-clumps support model.

Points on the torus T = [0, 1) are plain floats; :func:`wrap` gives the
canonical representative used for every comparison in the package.
"""

from dataclasses import dataclass, field, replace
from numbers import Real

import numpy as np

from .errors import InfeasibleClumpsError, ParameterError, SeparationUndefinedError

__all__ = [
    "wrap",
    "torus_distance",
    "AtomicMeasure",
    "ClumpsConfig",
    "min_separation",
    "generate_clumps",
    "validate_clumps",
    "satisfies_sep2",
    "srf",
]

# retry budget for uniform anchor draws before falling back to even spacing
_PLACEMENT_RETRIES = 200


def wrap(x):
    """Map reals to their canonical representative in [0, 1)."""
    x = np.asarray(x, dtype=float)
    w = x - np.floor(x)
    # x slightly below an integer rounds to exactly 1.0
    w = np.where(w >= 1.0, 0.0, w)
    return w if w.ndim else float(w)


def torus_distance(a, b):
    """Wrap-around distance ``min_n |a - b - n|``; broadcasts over arrays."""
    d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) % 1.0
    d = np.minimum(d, 1.0 - d)
    return d if d.ndim else float(d)


def _support_array(omega):
    if isinstance(omega, AtomicMeasure):
        return omega.support
    return np.atleast_1d(np.asarray(omega, dtype=float))


def _pairwise_min(omega):
    d = torus_distance(omega[:, None], omega[None, :])
    d[np.diag_indices_from(d)] = np.inf
    return float(d.min())


@dataclass(frozen=True)
class AtomicMeasure:
    """Discrete complex measure ``sum_j x_j delta_{omega_j}`` on the torus.

    Parameters
    ----------
    support : array_like of float
        Atom locations; wrapped into [0, 1).
    amplitudes : array_like of complex
        Atom weights, one per support point.
    """

    support: np.ndarray
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        support = wrap(np.atleast_1d(np.asarray(self.support, dtype=float)))
        support = np.atleast_1d(support)
        amps = np.atleast_1d(np.asarray(self.amplitudes, dtype=complex))
        if support.ndim != 1 or amps.ndim != 1:
            raise ParameterError("support and amplitudes must be one-dimensional")
        if support.size == 0:
            raise ParameterError("a measure needs at least one atom")
        if support.size != amps.size:
            raise ParameterError(
                f"support has {support.size} points but {amps.size} amplitudes were given"
            )
        if not np.all(np.isfinite(amps)):
            raise ParameterError("amplitudes must be finite")
        if support.size > 1 and _pairwise_min(support) <= 0.0:
            raise ParameterError("support points must be pairwise distinct")
        if not np.any(amps != 0):
            raise ParameterError("measure must be non-zero")
        support.setflags(write=False)
        amps.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def S(self):
        return self.support.size

    @property
    def x_min(self):
        return float(np.min(np.abs(self.amplitudes)))

    def scaled_support(self, eps):
        """Measure with the same amplitudes and support ``eps * omega``."""
        return AtomicMeasure(eps * self.support, self.amplitudes)


def min_separation(omega):
    """Smallest torus distance between two distinct atoms.

    Raises
    ------
    SeparationUndefinedError
        If the support has a single point.
    """
    omega = _support_array(omega)
    if omega.size < 2:
        raise SeparationUndefinedError("separation undefined for single atom")
    return _pairwise_min(omega)


@dataclass(frozen=True)
class ClumpsConfig:
    """Parameters of a separated-clumps support.

    Each clump holds ``clump_sizes[a]`` points spaced ``alpha / M`` apart and
    distinct clumps are at least ``beta / M`` apart on the torus.
    """

    M: int
    clump_sizes: tuple
    alpha: float
    beta: float

    def __post_init__(self):
        sizes = tuple(int(s) for s in np.atleast_1d(self.clump_sizes))
        object.__setattr__(self, "clump_sizes", sizes)
        if int(self.M) != self.M or self.M < 1:
            raise ParameterError(f"M must be a positive integer, got {self.M}")
        if not sizes or min(sizes) < 1:
            raise ParameterError("clump sizes must be positive integers")
        if not (self.alpha > 0 and self.beta > 0):
            raise ParameterError("alpha and beta must be positive")
        if self.alpha * (max(sizes) - 1) >= 1:
            raise InfeasibleClumpsError(
                "clumps config infeasible: a clump of "
                f"{max(sizes)} points spaced {self.alpha}/M does not fit in an interval of length 1/M"
            )
        if self.total_span() > 1:
            raise InfeasibleClumpsError(
                "clumps config infeasible: clump widths plus gaps exceed the torus length"
            )

    @property
    def A(self):
        return len(self.clump_sizes)

    @property
    def S(self):
        return sum(self.clump_sizes)

    @property
    def lam(self):
        """Cardinality of the largest clump."""
        return max(self.clump_sizes)

    @property
    def delta(self):
        return self.alpha / self.M

    @property
    def srf(self):
        return 1.0 / self.alpha

    def widths(self):
        return np.array([(s - 1) * self.delta for s in self.clump_sizes])

    def total_span(self):
        gaps = self.A * self.beta / self.M if self.A > 1 else 0.0
        return float(self.widths().sum() + gaps)

    def with_srf(self, value):
        return replace(self, alpha=1.0 / value)


def satisfies_sep2(cfg):
    """Whether ``beta >= max_a 20 sqrt(S) lam_a^(5/2) / sqrt(alpha)`` holds.

    This is the extra gap condition under which the clumps lower bound on the
    Vandermonde singular value is proved; it is reported, never enforced.
    """
    need = max(20.0 * np.sqrt(cfg.S) * s**2.5 / np.sqrt(cfg.alpha) for s in cfg.clump_sizes)
    return cfg.beta >= need


def _cyclic_gaps(anchors, widths):
    ends = anchors + widths
    nxt = np.roll(anchors, -1)
    nxt[-1] += 1.0
    return nxt - ends


def generate_clumps(cfg, placement_seed=0):
    """Draw a support satisfying the separated-clumps model.

    Clump anchors are drawn uniformly on the torus and re-drawn until every
    inter-clump gap is at least ``beta / M``. After a fixed retry budget the
    clumps are spread evenly with a random rotation instead.

    Returns
    -------
    numpy.ndarray
        The ``S`` support points, clump by clump, each in [0, 1).
    """
    rng = np.random.default_rng(placement_seed)
    widths = cfg.widths()
    min_gap = cfg.beta / cfg.M
    anchors = None
    if cfg.A == 1:
        anchors = rng.random(1)
    else:
        for _ in range(_PLACEMENT_RETRIES):
            cand = np.sort(rng.random(cfg.A))
            if np.all(_cyclic_gaps(cand, widths) >= min_gap):
                anchors = cand
                break
        if anchors is None:
            gap = (1.0 - widths.sum()) / cfg.A
            starts = np.concatenate([[0.0], np.cumsum(widths + gap)[:-1]])
            anchors = rng.random() + starts
    pts = [a + k * cfg.delta for a, s in zip(anchors, cfg.clump_sizes) for k in range(s)]
    return wrap(np.array(pts))


def validate_clumps(omega, cfg, rtol=1e-9):
    """Check a support against the separated-clumps model of ``cfg``.

    Clumps are recovered by cutting the sorted circle at its ``A`` largest
    gaps, so the check does not rely on how ``omega`` was produced.

    Returns
    -------
    dict
        Boolean entries ``width``, ``separation``, ``gaps``, ``sizes`` and
        their conjunction ``ok``.
    """
    pts = np.sort(wrap(np.asarray(omega, dtype=float)))
    gaps = np.diff(np.concatenate([pts, [pts[0] + 1.0]]))
    slack = rtol / cfg.M
    report = {"separation": True, "gaps": True}
    if pts.size > 1:
        report["separation"] = min_separation(pts) >= cfg.delta - slack
    # gap i follows point i; cutting after the A largest gaps splits the clumps
    cuts = np.sort(np.argsort(gaps)[::-1][: cfg.A])
    clumps = []
    for c0, c1 in zip(cuts, np.roll(cuts, -1)):
        idx = np.arange(c0 + 1, c1 + 1 + (pts.size if c1 <= c0 else 0)) % pts.size
        clumps.append(idx)
    spans = [float(np.sum(gaps[idx[:-1]])) for idx in clumps]
    report["width"] = all(sp <= 1.0 / cfg.M + slack for sp in spans)
    if cfg.A > 1:
        report["gaps"] = bool(np.all(gaps[cuts] >= cfg.beta / cfg.M - slack))
    report["sizes"] = sorted(len(c) for c in clumps) == sorted(cfg.clump_sizes)
    report["ok"] = all(report.values())
    return report


def srf(source, M=None):
    """Super-resolution factor ``1 / (Delta * M)``.

    ``source`` may be a :class:`ClumpsConfig` (giving ``1 / alpha``), a
    measure or support array, or a separation value given directly.
    """
    if isinstance(source, ClumpsConfig):
        return source.srf
    if M is None:
        raise ParameterError("M is required to compute the SRF of a support")
    delta = float(source) if isinstance(source, Real) else min_separation(source)
    return 1.0 / (delta * M)
