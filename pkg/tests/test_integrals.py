import numpy as np
import pytest

from quenchlab.integrals import (AsymptoteParams, QuadratureError, asymptotes,
                                 barouch_mccoy, gs_epsilon, gs_sigma,
                                 lattice_tail, thermal_epsilon)


def test_zero_depth_gives_zero():
    t = np.linspace(0.0, 10.0, 5)
    assert np.all(barouch_mccoy(0.0, np.inf, t) == 0.0)
    assert barouch_mccoy(0.0, 5.0, 3.0) == 0.0


def test_scalar_and_array_shapes():
    v = barouch_mccoy(0.05, np.inf, 2.0)
    assert np.ndim(v) == 0
    arr = barouch_mccoy(0.05, np.inf, np.array([1.0, 2.0]))
    assert arr.shape == (2,)
    assert arr[1] == pytest.approx(v, abs=1e-12)


def test_argument_errors():
    with pytest.raises(ValueError):
        barouch_mccoy(-0.1, np.inf, 1.0)
    with pytest.raises(ValueError):
        barouch_mccoy(0.1, 0.0, 1.0)
    with pytest.raises(ValueError):
        AsymptoteParams(g=-0.1)
    with pytest.raises(ValueError):
        AsymptoteParams(g=0.1, beta=-1.0)


def test_quadrature_error_raised_on_impossible_tolerance():
    with pytest.raises(QuadratureError) as exc:
        barouch_mccoy(0.1, np.inf, 5.0, abs_tol=1e-300)
    assert exc.value.achieved > exc.value.requested


def test_initial_value_matches_static_integral():
    # at t = 0 the integrand loses its oscillation; check against scipy quad
    from scipy.integrate import quad
    g = 0.07
    f = lambda k: g * np.cos(0.5 * k) ** 2 / np.sqrt(
        g * g + 2 * (1 - g) * (1 - np.cos(k)))
    ref, _ = quad(f, 0.0, np.pi, epsabs=1e-12, epsrel=1e-12, limit=200)
    assert barouch_mccoy(g, np.inf, 0.0) == pytest.approx(2 / np.pi * ref, abs=1e-10)


def test_lattice_tail_thermal_occupation_factor():
    g, beta = 0.1, 7.0
    t = np.linspace(3.0, 9.0, 7)
    cold = lattice_tail(AsymptoteParams(g=g), t)
    warm = lattice_tail(AsymptoteParams(g=g, beta=beta), t)
    assert np.allclose(warm, cold * np.tanh(beta * abs(2.0 - g)), rtol=1e-14)


def test_gs_sigma_form():
    p = AsymptoteParams(g=0.04)
    t = np.array([0.0, 3.0])
    v = gs_sigma(p, t)
    assert v[0] == pytest.approx(0.08 ** 0.125)
    assert v[1] / v[0] == pytest.approx(np.exp(-0.12))


def test_thermal_epsilon_requires_finite_beta():
    with pytest.raises(ValueError):
        thermal_epsilon(AsymptoteParams(g=0.1), np.array([1.0]))


def test_asymptotes_keys():
    t = np.array([2.0, 3.0])
    gs = asymptotes(AsymptoteParams(g=0.1), t)
    assert set(gs) == {"gs_sigma", "gs_epsilon", "lattice_tail"}
    th = asymptotes(AsymptoteParams(g=0.1, beta=5.0), t)
    assert "thermal_epsilon" in th


def test_gs_asymptote_matches_exact_integral():
    # universal decay + band-edge tail vs the exact quadrature, shallow quench
    g = 0.02
    p = AsymptoteParams(g=g)
    t = np.linspace(20.0, 40.0, 5)
    exact = barouch_mccoy(g, np.inf, t)
    approx = gs_epsilon(p, t) + lattice_tail(p, t)
    assert np.max(np.abs(exact - approx) / np.abs(exact)) < 0.1


def test_thermal_asymptote_matches_exact_integral_at_first_order():
    beta = 20.0
    t = np.linspace(8.0, 20.0, 6)

    def dev(g):
        p = AsymptoteParams(g=g, beta=beta)
        exact = barouch_mccoy(g, beta, t)
        approx = thermal_epsilon(p, t) + lattice_tail(p, t)
        return np.max(np.abs(exact - approx) / np.abs(exact))

    assert dev(0.005) < 0.05
    # the residual is O(g): halving g must (more than) halve it
    assert dev(0.002) < 0.6 * dev(0.005)
