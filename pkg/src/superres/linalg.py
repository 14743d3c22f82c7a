"""Dense complex linear algebra used by the estimators.

The routines are thin, validated wrappers over LAPACK through numpy: the SVD
uses Golub-Kahan bidiagonalisation with a QR/divide-and-conquer core, and the
eigensolver balances, reduces to Hessenberg form and runs shifted QR.
"""

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, ParameterError

__all__ = [
    "as_matrix",
    "SvdResult",
    "svd",
    "singular_values",
    "truncate_rank",
    "pseudo_inverse",
    "eigenvalues",
    "DEFAULT_RANK_TOL",
]

DEFAULT_RANK_TOL = 1e-12


def as_matrix(A):
    """Return ``A`` as a finite two-dimensional complex128 array."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or 0 in A.shape:
        raise ParameterError(f"expected a non-empty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ParameterError("matrix entries must be finite")
    return A


class SvdResult(NamedTuple):
    """Singular value decomposition ``A = U @ diag(s) @ V^*``.

    ``U`` and ``V`` are square (full decomposition); ``singular_values`` is
    descending with length ``min(A.shape)``.
    """

    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray

    def reconstruct(self, rank=None):
        k = self.singular_values.size if rank is None else rank
        return (self.U[:, :k] * self.singular_values[:k]) @ self.V[:, :k].conj().T


def svd(A, full_matrices=True):
    """Full SVD of a complex matrix.

    Raises
    ------
    ConvergenceError
        If the LAPACK driver does not converge.
    """
    A = as_matrix(A)
    try:
        U, s, Vh = np.linalg.svd(A, full_matrices=full_matrices)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError("svd", detail=str(exc)) from exc
    return SvdResult(U, s, Vh.conj().T)


def singular_values(A):
    """Descending singular values only."""
    A = as_matrix(A)
    try:
        return np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError("svd", detail=str(exc)) from exc


def truncate_rank(result, S):
    """Leading ``S`` singular triplets ``(U_S, sigma_S, V_S)``.

    ``U_S @ diag(sigma_S) @ V_S^*`` is the best rank-``S`` approximation in
    the spectral norm.
    """
    n = result.singular_values.size
    if not 1 <= S <= n:
        raise ParameterError(f"rank {S} outside 1..{n}")
    return result.U[:, :S], result.singular_values[:S], result.V[:, :S]


def pseudo_inverse(A, rank_tol=DEFAULT_RANK_TOL):
    """Moore-Penrose pseudoinverse via the SVD.

    Singular values at or below ``rank_tol * sigma_1`` are treated as zero.
    """
    A = as_matrix(A)
    U, s, V = svd(A, full_matrices=False)
    if s[0] == 0:
        return np.zeros(A.shape[::-1], dtype=complex)
    keep = s > rank_tol * s[0]
    return (V[:, keep] / s[keep]) @ U[:, keep].conj().T


def eigenvalues(A):
    """Eigenvalues of a square matrix, repeated according to multiplicity."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise ParameterError(f"eigenvalues need a square matrix, got {A.shape}")
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError("eigenvalues", detail=str(exc)) from exc
