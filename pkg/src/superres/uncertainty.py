"""Uncertainty-principle quantities for discrete non-harmonic Fourier series.

``C_N(mu) = |mu_hat(0)| / (sum_{k<N} |mu_hat(k)|^2)^(1/2)`` measures how much
of the first ``N`` Fourier coefficients is concentrated at frequency zero.
"""

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import ParameterError
from .forward import vandermonde
from .measures import AtomicMeasure, torus_distance, wrap

__all__ = [
    "fourier_transform",
    "uncertainty_constant",
    "support_supremum",
    "search_uncertainty_constant",
    "complex_uncertainty_bound",
    "real_uncertainty_bound",
    "separated_uncertainty_bound",
    "vanishing_polynomial",
    "vanishing_polynomial_sup",
    "count_nonzero_coefficients",
]


def fourier_transform(measure, ks):
    """``mu_hat(k) = sum_j x_j exp(-2 pi i k omega_j)`` at integer ``ks``."""
    ks = np.asarray(ks, dtype=float)
    phase = np.multiply.outer(ks, measure.support) % 1.0
    return np.exp(-2j * np.pi * phase) @ measure.amplitudes


def uncertainty_constant(measure, N):
    """``C_N(mu)`` for ``N >= S``.

    Raises
    ------
    ParameterError
        If ``N < S``, where the denominator can vanish.
    """
    if N < measure.S:
        raise ParameterError(
            f"constant may be infinite below N = S (got N={N}, S={measure.S})"
        )
    coeffs = fourier_transform(measure, np.arange(N))
    return float(np.abs(coeffs[0]) / np.linalg.norm(coeffs))


def support_supremum(omega, N, real=False):
    """Supremum of ``C_N`` over all amplitudes for a fixed support.

    ``C_N^2 = |1^T u|^2 / (u^* G u)`` with ``G = Phi^* Phi`` is a generalised
    Rayleigh quotient, maximised at ``u = G^{-1} 1`` with value ``1^T G^{-1} 1``.
    For real amplitudes ``G`` is replaced by its real part.
    """
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    Phi = vandermonde(omega, N - 1)
    G = Phi.conj().T @ Phi
    if real:
        G = G.real
    ones = np.ones(omega.size)
    value = float(np.real(ones @ np.linalg.solve(G, ones)))
    return float(np.sqrt(min(max(value, 0.0), 1.0)))


_COND_LIMIT = 1e-5


def search_uncertainty_constant(S, N, restarts=10, sweeps=20, seed=0, real=False):
    """Coordinate-ascent search for large ``C_N`` over ``S``-point supports.

    Amplitudes are optimised in closed form by :func:`support_supremum`; the
    support points are updated one at a time by a coarse scan followed by a
    bounded scalar search. The result is a lower bound on ``C_{N,S}``.

    Returns
    -------
    value : float
    support : numpy.ndarray
    """
    if N < S:
        raise ParameterError("constant may be infinite below N = S")
    rng = np.random.default_rng(seed)
    coarse = np.arange(64) / 64

    def objective(pts):
        if np.min(torus_distance(pts[:, None], pts[None, :]) + np.eye(S)) < 1e-6:
            return 0.0
        # near-collisions make G numerically singular and 1^T G^-1 1 meaningless
        s = np.linalg.svd(vandermonde(pts, N - 1), compute_uv=False)
        if s[-1] < _COND_LIMIT * s[0]:
            return 0.0
        return support_supremum(pts, N, real)

    best_val, best_pts = -1.0, None
    for _ in range(restarts):
        pts = rng.random(S)
        val = objective(pts)
        for _ in range(sweeps):
            prev = val
            for j in range(S):
                def neg(t, j=j):
                    trial = pts.copy()
                    trial[j] = wrap(t)
                    return -objective(trial)

                scores = [neg(t) for t in coarse]
                t0 = coarse[int(np.argmin(scores))]
                res = minimize_scalar(neg, bounds=(t0 - 1 / 64, t0 + 1 / 64), method="bounded")
                cand = min((res.fun, wrap(res.x)), (min(scores), t0))
                if -cand[0] > val:
                    val = -cand[0]
                    pts[j] = cand[1]
            if val - prev < 1e-12:
                break
        if val > best_val:
            best_val, best_pts = val, np.sort(pts)
    return best_val, best_pts


def complex_uncertainty_bound(S):
    """``sqrt(1 - 4^-S)``, uniform over complex ``S``-atom measures."""
    return float(np.sqrt(1.0 - 4.0**-S))


def real_uncertainty_bound(S):
    """``sqrt(1 - 1 / (8S - 1))``, uniform over real ``S``-atom measures."""
    return float(np.sqrt(1.0 - 1.0 / (8 * S - 1)))


def separated_uncertainty_bound(C, S, N):
    """Bound on ``C_N`` when the minimum separation is at least ``C / (N - 1)``."""
    if C <= 1:
        raise ParameterError("separation constant must exceed 1")
    return float(min(1.0, np.sqrt(C / (C - 1)) * np.sqrt(S / (N - 1))))


def vanishing_polynomial(omega, t):
    """``(-1)^S prod_j (exp(2 pi i (t - omega_j)) - 1)``; zero exactly on ``omega``."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    t = np.asarray(t, dtype=float)
    factors = np.exp(2j * np.pi * (np.subtract.outer(t, omega) % 1.0)) - 1.0
    return (-1) ** omega.size * np.prod(factors, axis=-1)


def vanishing_polynomial_sup(omega, grid=2**14):
    """Sup norm of the vanishing polynomial on the torus.

    Evaluated on a uniform grid, then refined at the grid maximum by the
    vertex of the parabola through the three neighbouring samples.
    """
    t = np.arange(grid) / grid
    vals = np.abs(vanishing_polynomial(omega, t))
    i = int(np.argmax(vals))
    a, b, c = vals[i - 1], vals[i], vals[(i + 1) % grid]
    curv = a - 2 * b + c
    best = float(b)
    if curv < 0:
        t_star = (i + 0.5 * (a - c) / curv) / grid
        best = max(best, float(np.abs(vanishing_polynomial(omega, t_star))))
    return best


def count_nonzero_coefficients(measure, window, tol=None):
    """Number of ``k`` in a window of consecutive integers with ``|mu_hat(k)| > tol``.

    ``tol`` defaults to ``1e-12`` times the largest modulus in the window.
    """
    ks = np.asarray(list(window), dtype=int)
    if ks.size == 0 or np.any(np.diff(ks) != 1):
        raise ParameterError("window must be a non-empty run of consecutive integers")
    if not isinstance(measure, AtomicMeasure):
        raise ParameterError("expected an AtomicMeasure")
    mags = np.abs(fourier_transform(measure, ks))
    if tol is None:
        tol = 1e-12 * mags.max()
    return int(np.count_nonzero(mags > tol))
