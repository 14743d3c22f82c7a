import numpy as np
import pytest

from superres.bounds import (
    BoundReport,
    aligned_psi_pair,
    check_bauer_fike,
    check_clumps_scaling,
    check_md_relation,
    check_moitra,
    check_u0_bound,
    gaussian_hankel_mean_bound,
    predicted_error_bound,
    predicted_error_bounds,
    sigma_min_vandermonde,
    signal_basis,
    error_bound_constants,
    well_separated_error_bound,
    well_separated_u0_floor,
)
from superres.errors import ParameterError
from superres.estimators import esprit
from superres.forward import add_noise, fourier_coefficients, hankel
from superres.linalg import singular_values
from superres.measures import AtomicMeasure, ClumpsConfig, generate_clumps
from superres.metrics import matching_distance
from superres.verification import random_separated_support


def test_bound_report_satisfied():
    assert BoundReport("x", 1.0, 1.0).satisfied
    assert BoundReport("x", 1.0 + 1e-10, 1.0).satisfied
    assert not BoundReport("x", 1.1, 1.0).satisfied


def test_sigma_min_examples():
    assert sigma_min_vandermonde([0, 0.5], 1) == pytest.approx(np.sqrt(2))
    assert sigma_min_vandermonde([0, 0.25], 3) == pytest.approx(2)
    with pytest.raises(ParameterError):
        sigma_min_vandermonde([0.1, 0.2, 0.3], 1)


def test_moitra_example():
    rng = np.random.default_rng(0)
    for _ in range(20):
        omega = random_separated_support(rng, 4, 2 / 100)
        rep = check_moitra(omega, 100)
        # C >= 2 gives sigma_S^2 >= (C-1)/C * M >= 50
        assert rep.satisfied and rep.rhs >= 50
    with pytest.raises(ParameterError):
        check_moitra([0.0, 0.005], 100)


def test_md_relation_examples():
    assert check_md_relation([0.3], [0.3], [np.exp(-0.6j * np.pi)], [np.exp(-0.6j * np.pi)]).satisfied
    rep = check_md_relation([0.0], [0.01], [1.0], [np.exp(-2j * np.pi * 0.01)])
    assert rep.lhs == pytest.approx(0.01)
    assert rep.rhs == pytest.approx(np.sin(0.01 * np.pi))
    assert rep.satisfied


def test_md_relation_on_noisy_runs():
    rng = np.random.default_rng(1)
    omega = np.array([0.1, 0.12, 0.6])
    for t in range(50):
        y = add_noise(fourier_coefficients(AtomicMeasure(omega, np.ones(3)), 40), 10 ** rng.uniform(-5, 0), seed=t)
        res = esprit(y, 3)
        assert check_md_relation(omega, res.support_estimate, np.exp(-2j * np.pi * omega),
                                 res.diagnostics.raw_eigenvalues).satisfied


def test_u0_bound_single_atom_closed_form():
    for L in (1, 2, 5, 30):
        U = signal_basis([0.37], L)
        rep = check_u0_bound(U, sigma_min_vandermonde([0.37], L), 1)
        assert rep.satisfied
        assert rep.context["sigma_S_U0"] ** 2 == pytest.approx(L / (L + 1))


def test_u0_bound_two_clumps_and_well_separated():
    cfg = ClumpsConfig(100, (2, 2), 0.4, 10)
    omega = generate_clumps(cfg, 3)
    assert check_u0_bound(signal_basis(omega, 50), sigma_min_vandermonde(omega, 50), 4).satisfied
    rng = np.random.default_rng(2)
    L, S = 50, 3
    omega = random_separated_support(rng, S, 4 / L)
    rep = check_u0_bound(signal_basis(omega, L), sigma_min_vandermonde(omega, L), S)
    C = 4.0
    assert rep.context["sigma_S_U0"] ** 2 >= well_separated_u0_floor(C, S, L)


def test_u0_bound_requires_orthonormal_basis():
    with pytest.raises(ParameterError):
        check_u0_bound(np.ones((4, 1)), 2.0, 1)


def test_predicted_bound_noiseless_and_vacuous():
    mu = AtomicMeasure([0.1, 0.5], [1, 1])
    reg = predicted_error_bound(mu, 40, 20, 0.0)
    assert reg.regime in ("small", "moderate") and reg.bound == 0
    assert set(predicted_error_bounds(mu, 40, 20, 0.0)) == {"moderate", "small"}
    assert predicted_error_bound(mu, 40, 20, 1e6) == ("none", np.inf)


def test_predicted_bound_single_atom_has_no_small_regime():
    mu = AtomicMeasure([0.3], [1.0])
    assert set(predicted_error_bounds(mu, 20, 10, 0.0)) == {"moderate"}
    assert error_bound_constants(mu, 20, 10)["delta"] is None


def test_moderate_threshold_is_sharp():
    mu = AtomicMeasure([0.1, 0.5], [1, 2])
    c = error_bound_constants(mu, 40, 20)
    t = c["x_min"] * c["sigma_U0"] * c["sigma_phi_L"] * c["sigma_phi_ML"] / (4 * np.sqrt(4))
    assert "moderate" in predicted_error_bounds(mu, 40, 20, t * (1 - 1e-9), c)
    assert "moderate" not in predicted_error_bounds(mu, 40, 20, t * (1 + 1e-9), c)


def test_error_bound_holds_on_random_runs():
    rng = np.random.default_rng(3)
    for t in range(60):
        S, M = 3, 60
        omega = random_separated_support(rng, S, 2 / M)
        mu = AtomicMeasure(omega, np.exp(2j * np.pi * rng.random(S)))
        y = add_noise(fourier_coefficients(mu, M), 10 ** rng.uniform(-6, -1), seed=t)
        res = esprit(y, S)
        md = matching_distance(omega, res.support_estimate)
        h = singular_values(hankel(y.noise, M // 2))[0]
        for bound in predicted_error_bounds(mu, M, M // 2, h).values():
            assert md <= bound + 1e-9


def test_bauer_fike_and_alignment():
    rng = np.random.default_rng(4)
    omega = np.array([0.2, 0.21, 0.7])
    U = signal_basis(omega, 20)
    psi, psi2 = aligned_psi_pair(U, U)
    assert np.allclose(psi, psi2, atol=1e-10)
    for t in range(30):
        y = add_noise(fourier_coefficients(AtomicMeasure(omega, [1, 1, 1]), 40), 10 ** rng.uniform(-5, -1), seed=t)
        res = esprit(y, 3, 20)
        rep = check_bauer_fike(omega, res.support_estimate, U, res.diagnostics.basis,
                               sigma_min_vandermonde(omega, 20))
        assert rep.satisfied


def test_well_separated_bound():
    mu = AtomicMeasure([0.1, 0.5], [1, 1])
    assert well_separated_error_bound(mu, 40, 0.0) == 0.0
    assert well_separated_error_bound(mu, 40, 1e3) is None
    close = AtomicMeasure([0.1, 0.11], [1, 1])
    assert well_separated_error_bound(close, 40, 0.0) is None
    with pytest.raises(ParameterError):
        well_separated_error_bound(mu, 41, 0.0)


def test_gaussian_hankel_bound_value():
    assert gaussian_hankel_mean_bound(100, 50, 1.0) == pytest.approx(21.7, abs=0.05)


@pytest.mark.parametrize("sizes, slope", [((1, 1, 1), 0.0), ((2,), -1.0), ((3, 3), -2.0)])
def test_clumps_scaling(sizes, slope):
    cfg = ClumpsConfig(100, sizes, 0.4, 10)
    fit = check_clumps_scaling(cfg, np.geomspace(2, 10, 9))
    assert fit.slope == pytest.approx(slope, abs=0.15)


def test_clumps_scaling_skips_infeasible():
    cfg = ClumpsConfig(100, (3,), 0.4, 10)
    fit = check_clumps_scaling(cfg, [1.5, 2.0, 4.0, 8.0])
    assert fit.skipped == (1.5, 2.0)
