import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import lambertw

from quenchlab.crossover import (crossover_times, lambert_w_minus1,
                                 refit_gs_powerlaw, refit_thermal_log)


def test_lambert_against_scipy():
    for z in (-0.3, -0.05, -1e-3, -1e-8, -0.36, -0.367):
        w = lambert_w_minus1(z)
        ref = float(np.real(lambertw(z, k=-1)))
        assert w == pytest.approx(ref, rel=1e-10)


def test_lambert_branch_point_and_domain():
    assert lambert_w_minus1(-np.exp(-1.0)) == -1.0
    for bad in (0.0, 0.1, -0.4):
        with pytest.raises(ValueError):
            lambert_w_minus1(bad)


@given(st.floats(min_value=-0.3678, max_value=-1e-10))
@settings(max_examples=100, deadline=None)
def test_lambert_defining_residual(z):
    w = lambert_w_minus1(z)
    assert w <= -1.0
    assert abs(w * np.exp(w) - z) <= 1e-10 * max(abs(z), 1e-300)


def test_crossover_times_structure():
    out = crossover_times(0.05)
    assert out["t_star_thermal"] is None
    assert out["t_star_gs"] > 0
    out_th = crossover_times(0.05, beta=10.0)
    assert out_th["t_star_thermal"] > 0
    with pytest.raises(ValueError):
        crossover_times(0.0)
    with pytest.raises(ValueError):
        crossover_times(2.0)


def test_gs_crossover_grows_as_g_shrinks():
    ts = [crossover_times(g)["t_star_gs"] for g in (0.2, 0.1, 0.05, 0.01)]
    assert all(a < b for a, b in zip(ts, ts[1:]))


def test_refit_gs_powerlaw_constants():
    a, p = refit_gs_powerlaw()
    assert a == pytest.approx(1.37, abs=0.005)
    assert p == pytest.approx(0.14, abs=0.005)


def test_refit_thermal_log_constants():
    ap, bp = refit_thermal_log()
    assert ap == pytest.approx(0.26, abs=0.005)
    assert bp == pytest.approx(9.88, abs=0.05)
