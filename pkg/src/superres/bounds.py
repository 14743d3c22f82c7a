"""Computable forms of the ESPRIT stability bounds.

Every check returns a :class:`BoundReport`; ``satisfied`` means
``lhs <= rhs + tol``. The reports are plain records so a driver can collect
them from many runs and serialise them.
"""

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InfeasibleClumpsError, ParameterError, SeparationUndefinedError
from .forward import check_L, vandermonde
from .linalg import pseudo_inverse, singular_values, svd
from .measures import generate_clumps, min_separation
from .metrics import eigenvalue_matching_distance, matching_distance

__all__ = [
    "BoundReport",
    "BOUND_SLACK",
    "sigma_min_vandermonde",
    "signal_basis",
    "check_md_relation",
    "check_u0_bound",
    "check_moitra",
    "check_bauer_fike",
    "aligned_psi_pair",
    "error_bound_constants",
    "predicted_error_bound",
    "predicted_error_bounds",
    "well_separated_error_bound",
    "well_separated_u0_floor",
    "gaussian_hankel_mean_bound",
    "ScalingFit",
    "check_clumps_scaling",
]

BOUND_SLACK = 1e-9


@dataclass
class BoundReport:
    name: str
    lhs: float
    rhs: float
    tol: float = BOUND_SLACK
    context: dict = field(default_factory=dict)

    @property
    def satisfied(self):
        return bool(self.lhs <= self.rhs + self.tol)


def sigma_min_vandermonde(omega, M):
    """Smallest (S-th) singular value of ``Phi_M(omega)``."""
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    if omega.size > M + 1:
        raise ParameterError(f"{omega.size} nodes need M >= {omega.size - 1}")
    return float(singular_values(vandermonde(omega, M))[omega.size - 1])


def signal_basis(omega, L):
    """Orthonormal basis of ``Range(Phi_L(omega))``, the noiseless signal space.

    Householder QR of the Vandermonde matrix is used rather than an SVD of the
    Hankel matrix, whose conditioning is roughly the square.
    """
    Q, _ = np.linalg.qr(vandermonde(omega, L))
    return Q


def check_md_relation(omega, omega_hat, lams, lams_hat):
    """``md(Omega, Omega_hat) <= md(Psi, Psi_hat) / 2``."""
    lhs = matching_distance(omega, omega_hat)
    rhs = 0.5 * eigenvalue_matching_distance(lams, lams_hat)
    return BoundReport("md_relation", lhs, rhs, tol=1e-12)


def check_u0_bound(U, sigma_phi_L, S):
    """Lower bound on the smallest singular values of ``U0`` and ``U1``.

    Asserts ``min(s_S(U0)^2, s_S(U1)^2) >= max(1 - S / s_S(Phi_L)^2, 4^-S)``.
    """
    U = np.asarray(U, dtype=complex)
    gram_err = np.linalg.norm(U.conj().T @ U - np.eye(U.shape[1]), 2)
    if gram_err > 1e-8:
        raise ParameterError(f"basis is not orthonormal (|U*U - I| = {gram_err:.2e})")
    s0 = singular_values(U[:-1])[S - 1]
    s1 = singular_values(U[1:])[S - 1]
    observed = float(min(s0, s1) ** 2)
    floor = max(1.0 - S / sigma_phi_L**2, 4.0**-S)
    # lower bound: the floor plays the role of the left-hand side
    return BoundReport(
        "u0_lower_bound", floor, observed, context={"sigma_S_U0": float(s0), "sigma_S_U1": float(s1), "S": S}
    )


def check_moitra(omega, M):
    """``sigma_S(Phi_M)^2 >= (C - 1) / C * M`` where ``C = Delta * M > 1``."""
    C = min_separation(omega) * M
    if C <= 1:
        raise ParameterError(f"well-separated bound needs Delta * M > 1, got {C:.3f}")
    s = sigma_min_vandermonde(omega, M)
    return BoundReport("moitra", (C - 1) / C * M, s**2, context={"C": C, "M": M})


def aligned_psi_pair(U, U_hat):
    """``(Psi, Psi_hat)`` computed in canonical (principal-angle) bases.

    With ``U^* U_hat = W cos(theta) Z^*`` the bases ``U W`` and ``U_hat Z``
    pair each noiseless direction with its closest noisy one; the
    eigenvalues of each matrix are unchanged by this choice.
    """
    W, _, Z = svd(U.conj().T @ U_hat)
    Uc = U @ W
    Uh = U_hat @ Z
    psi = pseudo_inverse(Uc[:-1]) @ Uc[1:]
    psi_hat = pseudo_inverse(Uh[:-1]) @ Uh[1:]
    return psi, psi_hat


def check_bauer_fike(omega, omega_hat, U, U_hat, sigma_phi_L):
    """``md(Omega, Omega_hat) <= S^1.5 sqrt(L+1) |Psi_hat - Psi|_2 / s_S(Phi_L)``."""
    S = U.shape[1]
    L = U.shape[0] - 1
    psi, psi_hat = aligned_psi_pair(U, U_hat)
    dpsi = float(np.linalg.norm(psi_hat - psi, 2))
    rhs = S**1.5 * np.sqrt(L + 1) * dpsi / sigma_phi_L
    return BoundReport(
        "bauer_fike", matching_distance(omega, omega_hat), rhs, context={"psi_error": dpsi}
    )


def error_bound_constants(measure, M, L):
    """Noiseless quantities entering the support-error theorem.

    Returns a dict with ``S, L, x_min, delta`` (None for one atom),
    ``sigma_phi_L``, ``sigma_phi_ML`` and ``sigma_U0``.
    """
    S = measure.S
    check_L(S, L, M)
    omega = measure.support
    try:
        delta = min_separation(omega)
    except SeparationUndefinedError:
        delta = None
    U = signal_basis(omega, L)
    return {
        "S": S,
        "L": L,
        "x_min": measure.x_min,
        "delta": delta,
        "sigma_phi_L": sigma_min_vandermonde(omega, L),
        "sigma_phi_ML": sigma_min_vandermonde(omega, M - L),
        "sigma_U0": float(singular_values(U[:-1])[S - 1]),
    }


class ErrorBound(NamedTuple):
    regime: str
    bound: float


def _error_bound_regimes(c, hnorm):
    S, L, xm = c["S"], c["L"], c["x_min"]
    u0, pl, pml = c["sigma_U0"], c["sigma_phi_L"], c["sigma_phi_ML"]
    out = {}
    if hnorm <= xm * u0 * pl * pml / (4 * np.sqrt(2 * S)):
        out["moderate"] = 20 * S**2 * np.sqrt(L + 1) * hnorm / (xm * u0**2 * pl**2 * pml)
    # the small-noise condition involves Delta, which a single atom lacks
    if c["delta"] is not None:
        if hnorm <= xm * c["delta"] * u0**2 * pl**3 * pml / (20 * S**2.5 * (L + 1)):
            out["small"] = 20 * np.sqrt(S) * hnorm / (xm * u0**2 * pl * pml)
    return out


def predicted_error_bound(measure, M, L, hankel_noise_norm, constants=None):
    """Support-error bound from the noise level ``|H(eta)|_2``.

    Returns ``(regime, bound)`` with regime ``"moderate"``, ``"small"`` or
    ``"none"``. When both noise conditions hold the tighter bound is returned.
    Use :func:`predicted_error_bounds` to get every applicable regime.
    """
    regimes = predicted_error_bounds(measure, M, L, hankel_noise_norm, constants)
    if not regimes:
        return ErrorBound("none", float("inf"))
    name = min(regimes, key=lambda k: (regimes[k], k != "small"))
    return ErrorBound(name, float(regimes[name]))


def predicted_error_bounds(measure, M, L, hankel_noise_norm, constants=None):
    """All regimes whose noise condition holds, mapped to their md bound."""
    c = constants if constants is not None else error_bound_constants(measure, M, L)
    return {k: float(v) for k, v in _error_bound_regimes(c, hankel_noise_norm).items()}


def well_separated_u0_floor(C, S, L):
    """``1 - C / (C - 1) * S / L``: floor on ``s_S(U0)^2`` once ``Delta >= C / L``."""
    return 1.0 - C / (C - 1) * S / L


def well_separated_error_bound(measure, M, hankel_noise_norm):
    """Support-error bound in the well-separated regime ``Delta >= C / L``, ``C > 2``.

    Requires ``M >= 4S`` even and uses ``L = M / 2``. Returns the bound, or
    ``None`` when the separation or noise condition fails.
    """
    S = measure.S
    if M % 2 or M < 4 * S:
        raise ParameterError("well-separated bound needs an even M >= 4S")
    L = M // 2
    C = min_separation(measure.support) * L
    if C <= 2:
        return None
    floor = well_separated_u0_floor(C, S, L)
    if floor <= 0:
        return None
    xm = measure.x_min
    if hankel_noise_norm > xm * L / (4 * np.sqrt(2 * S)) * (C - 1) / C * np.sqrt(floor):
        return None
    return float(
        20 * S**2 / xm * np.sqrt(L + 1) / L**1.5 * (C / (C - 1)) ** 1.5 / floor * hankel_noise_norm
    )



def gaussian_hankel_mean_bound(M, L, sigma):
    """Upper bound on ``E |H(eta)|_2`` for Gaussian noise of level ``sigma``."""
    return sigma * np.sqrt(2 * max(L + 1, M - L + 1) * np.log(M + 2))


class ScalingFit(NamedTuple):
    slope: float
    intercept: float
    srf: np.ndarray
    sigma_min: np.ndarray
    skipped: tuple


def check_clumps_scaling(cfg, srf_grid, placement_seed=0, L=None):
    """Fit ``log s_S(Phi_L)`` against ``log SRF`` for clumps supports.

    For each SRF the template's ``alpha`` is replaced by ``1 / SRF`` and a
    support is drawn with the same placement seed. Infeasible SRF values are
    skipped and listed in ``skipped``. ``L`` defaults to ``M // 2``.
    """
    L = cfg.M // 2 if L is None else L
    kept, sig, skipped = [], [], []
    for value in srf_grid:
        try:
            c = cfg.with_srf(value)
        except InfeasibleClumpsError:
            skipped.append(float(value))
            continue
        kept.append(float(value))
        sig.append(sigma_min_vandermonde(generate_clumps(c, placement_seed), L))
    if len(kept) < 2:
        raise ParameterError("need at least two feasible SRF values to fit a slope")
    kept, sig = np.array(kept), np.array(sig)
    slope, intercept = np.polyfit(np.log(kept), np.log(sig), 1)
    return ScalingFit(float(slope), float(intercept), kept, sig, tuple(skipped))
