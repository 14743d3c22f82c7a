"""Forward model: Vandermonde matrices, Fourier data, noise, Hankel matrices."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ParameterError
from .measures import AtomicMeasure

__all__ = [
    "Measurement",
    "vandermonde",
    "fourier_coefficients",
    "noise_rng",
    "complex_gaussian",
    "add_noise",
    "hankel",
    "check_L",
    "default_L",
    "verify_vandermonde_factorization",
]


@dataclass(frozen=True)
class Measurement:
    """Noisy Fourier samples ``y = y0 + eta`` for ``k = 0..M``."""

    samples: np.ndarray
    clean: Optional[np.ndarray] = None
    noise_sigma: float = 0.0
    seed: object = None

    def __post_init__(self):
        y = np.atleast_1d(np.asarray(self.samples, dtype=complex))
        if y.ndim != 1 or y.size < 1:
            raise ParameterError("samples must be a non-empty 1-D sequence")
        object.__setattr__(self, "samples", y)
        if self.clean is not None:
            c = np.asarray(self.clean, dtype=complex)
            if c.shape != y.shape:
                raise ParameterError("clean data must match samples in length")
            object.__setattr__(self, "clean", c)

    @property
    def M(self):
        return self.samples.size - 1

    @property
    def noise(self):
        return None if self.clean is None else self.samples - self.clean


def _samples(y):
    if isinstance(y, Measurement):
        return y.samples
    return np.atleast_1d(np.asarray(y, dtype=complex))


def vandermonde(omega, M):
    """``(M+1) x S`` matrix with entries ``exp(-2 pi i k omega_j)``."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    if M < 0:
        raise ParameterError(f"M must be non-negative, got {M}")
    k = np.arange(M + 1)
    # reduce k*omega mod 1 first: keeps the phase argument small for large k
    return np.exp(-2j * np.pi * (np.outer(k, omega) % 1.0))


def fourier_coefficients(measure, M):
    """First ``M + 1`` Fourier coefficients of an atomic measure."""
    return vandermonde(measure.support, M) @ measure.amplitudes


def noise_rng(seed):
    """Generator from an int, a tuple of ints (hierarchical key) or a Generator.

    Tuples are hashed through :class:`numpy.random.SeedSequence`, so a key
    like ``(master_seed, cell, phase_draw, trial)`` yields a stream that does
    not depend on the order in which keys are visited.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, (tuple, list)):
        return np.random.default_rng(np.random.SeedSequence([int(s) for s in seed]))
    return np.random.default_rng(seed)


def complex_gaussian(rng, size, sigma=1.0):
    """Circularly-symmetric complex Gaussian with ``E|z|^2 = sigma^2``."""
    g = rng.standard_normal((2,) + tuple(np.atleast_1d(size)))
    return sigma * (g[0] + 1j * g[1]) / np.sqrt(2.0)


def add_noise(y0, sigma, seed=0):
    """Add complex Gaussian noise of per-entry power ``sigma**2``.

    ``sigma == 0`` returns the clean samples unchanged.
    """
    if sigma < 0:
        raise ParameterError(f"noise level must be non-negative, got {sigma}")
    y0 = _samples(y0)
    if sigma == 0:
        return Measurement(y0.copy(), clean=y0, noise_sigma=0.0, seed=seed)
    eta = complex_gaussian(noise_rng(seed), y0.size, sigma)
    return Measurement(y0 + eta, clean=y0, noise_sigma=float(sigma), seed=seed)


def hankel(y, L):
    """``(L+1) x (M-L+1)`` Hankel matrix with entry ``(i, j) = y[i + j]``."""
    y = _samples(y)
    M = y.size - 1
    if not 1 <= L <= M:
        raise ParameterError(f"Hankel parameter L={L} outside 1..M={M}")
    idx = np.arange(L + 1)[:, None] + np.arange(M - L + 1)[None, :]
    return y[idx]


def default_L(M):
    return M // 2


def check_L(S, L, M):
    """Raise unless ``S <= L <= M + 1 - S``."""
    if not (S >= 1 and S <= L <= M + 1 - S):
        raise ParameterError(
            f"need S <= L <= M+1-S, got S={S}, L={L}, M={M} (so {S} <= L <= {M + 1 - S})"
        )


def verify_vandermonde_factorization(measure, M, L):
    """Frobenius residual of ``H(y0) = Phi_L diag(x) Phi_{M-L}^T``.

    Note the plain transpose on the right factor.
    """
    if not isinstance(measure, AtomicMeasure):
        raise ParameterError("expected an AtomicMeasure")
    check_L(measure.S, L, M)
    H = hankel(fourier_coefficients(measure, M), L)
    rhs = (vandermonde(measure.support, L) * measure.amplitudes) @ vandermonde(
        measure.support, M - L
    ).T
    return float(np.linalg.norm(H - rhs))
