import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superres.errors import InfeasibleClumpsError, ParameterError, SeparationUndefinedError
from superres.measures import (
    AtomicMeasure,
    ClumpsConfig,
    generate_clumps,
    min_separation,
    satisfies_sep2,
    srf,
    torus_distance,
    validate_clumps,
    wrap,
)

reals = st.floats(-50, 50, allow_nan=False)


@pytest.mark.parametrize("a, b, d", [(0.1, 0.9, 0.2), (0.3, 0.3, 0.0), (0.0, 0.5, 0.5)])
def test_torus_distance_examples(a, b, d):
    assert torus_distance(a, b) == pytest.approx(d, abs=1e-15)


def test_torus_distance_random_pairs():
    rng = np.random.default_rng(0)
    a, b = rng.uniform(-3, 3, (2, 100_000))
    d = torus_distance(a, b)
    assert np.array_equal(d, torus_distance(b, a))
    assert d.max() <= 0.5 and d.min() >= 0


@given(reals, reals, reals)
def test_torus_triangle_inequality(a, b, c):
    assert torus_distance(a, c) <= torus_distance(a, b) + torus_distance(b, c) + 1e-12


@given(reals)
def test_wrap_range_and_idempotent(x):
    w = wrap(x)
    assert 0.0 <= w < 1.0
    assert wrap(w) == w


def test_wrap_just_below_integer():
    assert wrap(-1e-18) == 0.0


@pytest.mark.parametrize(
    "omega, delta",
    [([0.1, 0.15, 0.8], 0.05), ([0.02, 0.98], 0.04), ([0, 0.25, 0.5, 0.75], 0.25)],
)
def test_min_separation_examples(omega, delta):
    assert min_separation(omega) == pytest.approx(delta, abs=1e-15)


def test_min_separation_single_atom():
    with pytest.raises(SeparationUndefinedError, match="separation undefined for single atom"):
        min_separation([0.3])


def test_atomic_measure_validation():
    with pytest.raises(ParameterError):
        AtomicMeasure([0.1, 0.2], [1.0])
    with pytest.raises(ParameterError):
        AtomicMeasure([0.25, 1.25], [1.0, 1.0])  # same point after wrapping
    with pytest.raises(ParameterError):
        AtomicMeasure([0.1, 0.2], [0.0, 0.0])
    with pytest.raises(ParameterError):
        AtomicMeasure([], [])
    mu = AtomicMeasure([1.25, 0.5], [2.0, -1j])
    assert mu.S == 2 and mu.x_min == 1.0
    assert np.allclose(mu.support, [0.25, 0.5])


def test_generate_single_clump_spacing():
    cfg = ClumpsConfig(100, [2], 0.5, 10)
    omega = generate_clumps(cfg, 0)
    assert omega.size == 2
    assert min_separation(omega) == pytest.approx(0.005, abs=1e-15)


def test_generate_two_clumps_gap():
    cfg = ClumpsConfig(100, [2, 2], 0.5, 10)
    omega = generate_clumps(cfg, 1)
    rep = validate_clumps(omega, cfg)
    assert rep["ok"]
    pts = np.sort(omega)
    gaps = np.diff(np.concatenate([pts, [pts[0] + 1]]))
    assert np.sort(gaps)[-2] >= 0.1 - 1e-12
    assert min_separation(omega) == pytest.approx(0.005, abs=1e-14)


def test_infeasible_clump_width():
    with pytest.raises(InfeasibleClumpsError, match="clumps config infeasible"):
        ClumpsConfig(10, [11], 0.5, 10)


def test_infeasible_total_span():
    with pytest.raises(InfeasibleClumpsError, match="clumps config infeasible"):
        ClumpsConfig(100, [2] * 12, 0.5, 10)


@pytest.mark.parametrize("sizes", [(1,), (2,), (3,), (2, 2), (3, 3), (1, 2, 3), (4, 4, 4, 4)])
@pytest.mark.parametrize("seed", range(5))
def test_generated_supports_pass_validator(sizes, seed):
    cfg = ClumpsConfig(100, sizes, 0.3, 10)
    omega = generate_clumps(cfg, seed)
    assert validate_clumps(omega, cfg)["ok"]
    assert np.all((omega >= 0) & (omega < 1))


def test_generate_is_deterministic():
    cfg = ClumpsConfig(100, (2, 3), 0.25, 10)
    assert np.array_equal(generate_clumps(cfg, 7), generate_clumps(cfg, 7))
    assert not np.array_equal(generate_clumps(cfg, 7), generate_clumps(cfg, 8))


def test_tight_packing_falls_back_to_even_spacing():
    # 9 clumps with gaps of 0.1 fill the torus almost exactly
    cfg = ClumpsConfig(100, [2] * 9, 0.5, 10.5)
    assert validate_clumps(generate_clumps(cfg, 0), cfg)["ok"]


def test_validator_rejects_bad_support():
    cfg = ClumpsConfig(100, (2, 2), 0.5, 10)
    assert not validate_clumps([0.1, 0.105, 0.15, 0.155], cfg)["ok"]


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.9])
def test_srf_of_generated_support(alpha):
    cfg = ClumpsConfig(100, (2, 2), alpha, 10)
    omega = generate_clumps(cfg, 3)
    assert srf(omega, 100) == pytest.approx(1 / alpha, rel=1e-9)
    assert srf(cfg) == 1 / alpha


def test_srf_examples():
    assert srf(0.005, 100) == pytest.approx(2.0)
    assert srf(1 / 100, 100) == pytest.approx(1.0)
    assert srf(ClumpsConfig(100, (2,), 0.1, 10)) == pytest.approx(10.0)
    with pytest.raises(ParameterError):
        srf([0.1, 0.2])


def test_with_srf_and_sep2():
    cfg = ClumpsConfig(100, (2, 2), 0.5, 10)
    assert cfg.with_srf(4).alpha == 0.25
    assert not satisfies_sep2(cfg)
    assert satisfies_sep2(ClumpsConfig(10_000, (1,), 0.5, 100))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.floats(0.05, 0.3), st.integers(0, 10**6))
def test_generator_property(sizes, alpha, seed):
    cfg = ClumpsConfig(100, sizes, alpha, 5)
    assert validate_clumps(generate_clumps(cfg, seed), cfg)["ok"]
