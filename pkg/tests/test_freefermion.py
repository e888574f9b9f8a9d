import numpy as np
import pytest

from quenchlab.freefermion import (QuadraticFermionHamiltonian,
                                   choose_plateau_separation,
                                   energy_expectation, epsilon_expectation,
                                   epsilon_series, evolve_covariance,
                                   ground_covariance, jordan_wigner,
                                   order_parameter_series, thermal_covariance,
                                   transverse_expectation, transverse_series,
                                   zz_bond_expectation, zz_two_point)
from quenchlab.integrals import barouch_mccoy
from quenchlab.models import build_model, field_terms_at, primary_field_operator
from quenchlab.mps import dense_gibbs, dense_ground, ed_reference


def ordered_gs_covariance(L, g, boundary="open"):
    model = build_model("TFI", L, g=g, boundary=boundary)
    return ground_covariance(jordan_wigner(model))


def critical(L, boundary="open"):
    return jordan_wigner(build_model("TFI", L, boundary=boundary))


def test_non_tfi_rejected():
    with pytest.raises(ValueError):
        jordan_wigner(build_model("Potts", 4))


def test_generator_antisymmetric():
    hq = jordan_wigner(build_model("TFI", 6, g=0.3, boundary="periodic"))
    assert np.linalg.norm(hq.A + hq.A.T) < 1e-14


def test_dispersion_on_critical_ring():
    L = 10
    hq = critical(L, boundary="periodic")
    # antiperiodic-sector momenta: the closing bond carries the even-parity sign
    k = (2 * np.arange(L) + 1) * np.pi / L
    expect = np.sort(4.0 * np.abs(np.sin(0.5 * k)))[::2]  # doubly degenerate
    eps = hq.mode_energies()
    paired = np.sort(eps)
    assert np.allclose(np.sort(np.repeat(expect, 2))[: L], paired, atol=1e-10)


def test_evolution_preserves_structure():
    L = 8
    G0 = ordered_gs_covariance(L, 0.1)
    hq = critical(L)
    e0 = energy_expectation(G0, hq)
    s0 = np.sort(np.abs(np.linalg.eigvals(1j * G0)))
    for t in (0.7, 3.3):
        G = evolve_covariance(G0, hq, t)
        assert np.linalg.norm(G + G.T) < 1e-12
        s = np.sort(np.abs(np.linalg.eigvals(1j * G)))
        assert np.allclose(s, s0, atol=1e-10)
        assert energy_expectation(G, hq) == pytest.approx(e0, abs=1e-10)


def test_zero_modes_at_classical_point():
    # no transverse field: the open Majorana chain has two unpaired edge modes
    hq = jordan_wigner(build_model("TFI", 6, g=1.0))
    eps = hq.mode_energies()
    assert eps[0] == pytest.approx(0.0, abs=1e-12)
    G = ground_covariance(hq)
    lam = np.sort(np.abs(np.linalg.eigvals(1j * G)))
    # zero modes sit at occupation 0 => two vanishing eigenvalues of i Gamma
    assert np.allclose(lam[:2], 0.0, atol=1e-10)
    assert np.allclose(lam[2:], 1.0, atol=1e-10)


def dense_expectations(L, g):
    """<X_i>, <Z_i Z_{i+1}>, <Z_0 Z_j> of the dense ground state."""
    model = build_model("TFI", L, g=g)
    _, psi = dense_ground(model)
    X = np.array([[0, 1], [1, 0]], dtype=float)
    Z = np.diag([1.0, -1.0])

    def op(mats_at):
        O = np.eye(1)
        for i in range(L):
            O = np.kron(O, mats_at.get(i, np.eye(2)))
        return O

    x = [psi @ op({i: X}) @ psi for i in range(L)]
    zz = [psi @ op({i: Z, i + 1: Z}) @ psi for i in range(L - 1)]
    z0zj = [psi @ op({0: Z, j: Z}) @ psi for j in range(1, L)]
    return np.array(x), np.array(zz), np.array(z0zj)


def test_ground_state_matches_dense_ed():
    L, g = 8, 0.1
    G = ordered_gs_covariance(L, g)
    x_ref, zz_ref, z0zj_ref = dense_expectations(L, g)
    for i in range(L):
        assert transverse_expectation(G, i) == pytest.approx(x_ref[i], abs=1e-8)
    for i in range(L - 1):
        assert zz_bond_expectation(G, (i, i + 1)) == pytest.approx(
            zz_ref[i], abs=1e-8)
    for j in range(1, L):
        assert zz_two_point(G, 0, j) == pytest.approx(z0zj_ref[j - 1], abs=1e-8)
    eps = epsilon_expectation(G)
    assert eps == pytest.approx(zz_ref[L // 2] - x_ref[L // 2], abs=1e-8)


def test_thermal_covariance_matches_dense_gibbs():
    L, g, beta = 6, 0.2, 3.0
    model = build_model("TFI", L, g=g)
    rho = dense_gibbs(model, beta)
    G = thermal_covariance(jordan_wigner(model), beta)
    X = np.array([[0, 1], [1, 0]], dtype=float)
    for i in range(L):
        O = np.eye(1)
        for s in range(L):
            O = np.kron(O, X if s == i else np.eye(2))
        assert transverse_expectation(G, i) == pytest.approx(
            float(np.real(np.trace(rho @ O))), abs=1e-10)


def test_quench_series_match_dense_ed():
    L, g = 8, 0.1
    pre = build_model("TFI", L, g=g)
    post = build_model("TFI", L)
    _, psi0 = dense_ground(pre)
    times = np.linspace(0.0, 5.0, 21)
    site, bond = L // 2, (L // 2, L // 2 + 1)
    obs = {
        "X": (((site,), 1.0, ("X",)),),
        "epsilon": field_terms_at(primary_field_operator("TFI", "epsilon"),
                                  bond[0], L),
    }
    ref = ed_reference(post, psi0, times, obs)

    G0 = ground_covariance(jordan_wigner(pre))
    hq = jordan_wigner(post)
    xs = transverse_series(G0, hq, times, site=site)
    es = epsilon_series(G0, hq, times, bond=bond)
    assert np.max(np.abs(xs.values - np.real(ref["X"].values))) < 1e-8
    assert np.max(np.abs(es.values - np.real(ref["epsilon"].values))) < 1e-8


def test_quadrature_matches_covariance_large_chain():
    # central epsilon of a periodic L=400 ring vs the infinite-chain integral
    L, g = 400, 0.1
    times = np.array([0.0, 2.0, 5.0, 10.0, 20.0])
    post = critical(L, boundary="periodic")
    for beta in (np.inf, 10.0):
        pre = jordan_wigner(build_model("TFI", L, g=g, boundary="periodic"))
        G0 = (ground_covariance(pre) if np.isinf(beta)
              else thermal_covariance(pre, beta))
        es = epsilon_series(G0, post, times)
        ref = barouch_mccoy(g, beta, times)
        assert np.max(np.abs(es.values - ref)) < 1e-6


def test_plateau_certificate_and_order_parameter():
    L, g = 200, 0.05
    G0 = ordered_gs_covariance(L, g, boundary="periodic")
    n, diag = choose_plateau_separation(G0, L)
    assert n is not None and diag["relative_step"] < 0.01
    times = np.linspace(0.0, 4.0, 9)
    ts = order_parameter_series(G0, critical(L, boundary="periodic"), times)
    assert ts.values[0] == pytest.approx((2 * g) ** 0.125, rel=0.01)
    assert np.all(np.diff(ts.values) < 0)
    # decay rate ~ J g on the early plateau
    rate = -np.diff(np.log(ts.values))[2:6] / np.diff(times)[2:6]
    assert np.allclose(rate, g, rtol=0.15)
    assert ts.flags["t_valid_max"] > times[-1]


def test_index_guards():
    G = ordered_gs_covariance(4, 0.2)
    with pytest.raises(IndexError):
        transverse_expectation(G, 4)
    with pytest.raises(IndexError):
        zz_bond_expectation(G, (0, 2))
    with pytest.raises(ValueError):
        zz_two_point(G, 3, 1)
    assert zz_two_point(G, 2, 2) == 1.0
