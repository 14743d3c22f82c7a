"""Subspace estimators: ESPRIT, a grid-search MUSIC baseline, and LS amplitudes."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import MusicPeakDeficit, ParameterError
from .forward import Measurement, check_L, default_L, hankel, vandermonde
from .linalg import eigenvalues, pseudo_inverse, singular_values, svd, truncate_rank
from .measures import min_separation, wrap

__all__ = [
    "EspritDiagnostics",
    "MusicDiagnostics",
    "EstimationResult",
    "esprit",
    "esprit_eigenvalues",
    "music",
    "music_imaging",
    "recover_amplitudes",
]


@dataclass
class EspritDiagnostics:
    """Intermediate quantities of one ESPRIT run.

    ``basis`` is the orthonormal signal basis taken from the SVD and
    ``zero_eigenvalue`` flags eigenvalues at exactly zero, whose angle is
    undefined and which are mapped to frequency 0.
    """

    singular_values: np.ndarray
    sigma_S_U0: float
    psi: np.ndarray
    raw_eigenvalues: np.ndarray
    basis: np.ndarray = field(repr=False)
    zero_eigenvalue: bool = False


@dataclass
class MusicDiagnostics:
    singular_values: np.ndarray
    grid_size: int
    minima_values: np.ndarray


@dataclass
class EstimationResult:
    support_estimate: np.ndarray
    amplitudes_estimate: Optional[np.ndarray]
    diagnostics: object


def _as_samples(y):
    if isinstance(y, Measurement):
        return y.samples
    return np.atleast_1d(np.asarray(y, dtype=complex))


def _resolve_L(S, L, M):
    if L is None:
        L = default_L(M)
    check_L(S, L, M)
    return L


def esprit_eigenvalues(U):
    """Eigenvalues of ``pinv(U0) @ U1`` for an ``(L+1) x S`` basis ``U``.

    Returns ``(psi, eigenvalues)``.
    """
    psi = pseudo_inverse(U[:-1]) @ U[1:]
    return psi, eigenvalues(psi)


def esprit(y, S, L=None, amplitudes=False):
    """Estimate the support of an ``S``-atom measure with ESPRIT.

    Parameters
    ----------
    y : Measurement or array_like
        The ``M + 1`` Fourier samples.
    S : int
        Number of atoms.
    L : int, optional
        Hankel parameter with ``S <= L <= M + 1 - S``; defaults to ``M // 2``.
    amplitudes : bool
        Also recover amplitudes by least squares when the estimated
        frequencies are distinct.

    Returns
    -------
    EstimationResult
        Frequencies ``-angle(lambda_j) / (2 pi)`` wrapped to [0, 1), in the
        order the eigensolver returns them.
    """
    samples = _as_samples(y)
    M = samples.size - 1
    L = _resolve_L(S, L, M)
    dec = svd(hankel(samples, L))
    U, _, _ = truncate_rank(dec, S)
    psi, lam = esprit_eigenvalues(U)
    zero = lam == 0
    omega_hat = wrap(-np.angle(lam) / (2 * np.pi))
    omega_hat = np.where(zero, 0.0, omega_hat)
    diag = EspritDiagnostics(
        singular_values=dec.singular_values,
        sigma_S_U0=float(singular_values(U[:-1])[-1]),
        psi=psi,
        raw_eigenvalues=lam,
        basis=U,
        zero_eigenvalue=bool(zero.any()),
    )
    x_hat = None
    if amplitudes:
        try:
            x_hat = recover_amplitudes(samples, omega_hat)
        except ParameterError:
            x_hat = None
    return EstimationResult(omega_hat, x_hat, diag)


def music_imaging(noise_basis, grid_size):
    """Squared imaging function ``R(omega)^2`` on the grid ``n / grid_size``.

    ``R(omega) = |phi_L(omega)^* U_perp| / |phi_L(omega)|`` with
    ``phi_L(omega)_k = exp(-2 pi i k omega)``.
    """
    rows = noise_basis.shape[0]
    if grid_size < rows:
        raise ParameterError("grid must be at least as fine as the Hankel height")
    # sum_k u_k exp(+2 pi i k n / G) == G * ifft(u)[n]
    proj = grid_size * np.fft.ifft(noise_basis, n=grid_size, axis=0)
    return np.sum(np.abs(proj) ** 2, axis=1) / rows


def music(y, S, L=None, grid_size=None, amplitudes=False):
    """MUSIC support estimate from the noise subspace of the Hankel matrix.

    The ``S`` smallest local minima of the imaging function on a uniform grid
    are refined by a three-point parabola through ``R^2``.

    Raises
    ------
    MusicPeakDeficit
        If the data are identically zero or fewer than ``S`` local minima exist.
    """
    samples = _as_samples(y)
    M = samples.size - 1
    L = _resolve_L(S, L, M)
    if grid_size is None:
        grid_size = 16 * M
    if grid_size < 8 * M:
        raise ParameterError(f"MUSIC grid needs at least 8*M = {8 * M} points, got {grid_size}")
    dec = svd(hankel(samples, L))
    if dec.singular_values[0] == 0:
        raise MusicPeakDeficit("MUSIC peak deficit: zero data has no subspace gap")
    r2 = music_imaging(dec.U[:, S:], grid_size)
    left, right = np.roll(r2, 1), np.roll(r2, -1)
    minima = np.flatnonzero((r2 < left) & (r2 <= right))
    if minima.size < S:
        raise MusicPeakDeficit(
            f"MUSIC peak deficit: {minima.size} local minima for {S} atoms"
        )
    chosen = minima[np.argsort(r2[minima], kind="stable")[:S]]
    a, b, c = left[chosen], r2[chosen], right[chosen]
    curv = a - 2 * b + c
    with np.errstate(divide="ignore", invalid="ignore"):
        offset = np.where(curv > 0, 0.5 * (a - c) / curv, 0.0)
    omega_hat = wrap((chosen + offset) / grid_size)
    diag = MusicDiagnostics(dec.singular_values, grid_size, np.sqrt(b))
    x_hat = None
    if amplitudes:
        try:
            x_hat = recover_amplitudes(samples, omega_hat)
        except ParameterError:
            x_hat = None
    return EstimationResult(omega_hat, x_hat, diag)


def recover_amplitudes(y, omega_hat):
    """Least-squares amplitudes ``pinv(Phi_M(omega_hat)) @ y``.

    Raises
    ------
    ParameterError
        If the estimated nodes are not distinct.
    """
    samples = _as_samples(y)
    omega_hat = np.atleast_1d(np.asarray(omega_hat, dtype=float))
    if omega_hat.size > 1 and min_separation(omega_hat) == 0:
        raise ParameterError("repeated estimated nodes: amplitudes are not identifiable")
    Phi = vandermonde(omega_hat, samples.size - 1)
    return pseudo_inverse(Phi) @ samples
