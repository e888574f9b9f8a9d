import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quenchlab.cpt import (DEFAULT_VELOCITY, ScalingPrediction, bcft_decay,
                           beta_from_tau0, first_order_constants,
                           first_order_prediction, first_order_ratio,
                           gs_ansatz, second_order_template)

from oracles import reconstructed_linear_coefficients


def test_beta_from_tau0():
    assert beta_from_tau0(0.5) == 2.0
    with pytest.raises(ValueError):
        beta_from_tau0(0.0)


def test_bcft_decay_rate_and_prefactor():
    tau0, x = 0.7, 0.125
    t = np.linspace(0.0, 5.0, 11)
    v = bcft_decay(x, tau0, 2.0, t)
    assert v[0] == pytest.approx(2.0 * (np.pi / (2 * tau0)) ** x)
    rate = -np.diff(np.log(v)) / np.diff(t)
    assert np.allclose(rate, x * np.pi / (2 * tau0), rtol=1e-12)
    with pytest.raises(ValueError):
        bcft_decay(x, -1.0, 1.0, t)


def test_linear_coefficient_vanishes_exactly_at_x_one():
    c = first_order_constants(1.0)
    assert c["B"] == 0.0
    assert c["A"] == pytest.approx(4.0 * np.pi * DEFAULT_VELOCITY, rel=1e-14)


def test_constants_continuous_across_x_one():
    a1 = first_order_constants(1.0)["A"]
    for dx in (1e-6, -1e-6):
        assert first_order_constants(1.0 + dx)["A"] == pytest.approx(a1, rel=1e-4)


def test_constants_domain():
    for bad in (0.0, 2.0, -0.5, 2.3):
        with pytest.raises(ValueError):
            first_order_constants(bad)


def test_ratio_diverges_at_x_one():
    with pytest.raises(ZeroDivisionError):
        first_order_ratio(1.0)
    assert np.isfinite(first_order_ratio(0.125))


def test_constants_match_integral_oracle():
    # independent reconstruction of the linear-template coefficients from
    # the defining strip/plane integrals (sigma dimension 1/8)
    x = 0.125
    c1, c2 = reconstructed_linear_coefficients(x)
    c = first_order_constants(x)
    assert c2 / c1 == pytest.approx(c["B"] / c["A"], abs=1e-6)


def test_first_order_prediction_scalings():
    t = np.linspace(0.0, 3.0, 7)
    base = first_order_prediction(0.125, 0.01, 5.0, t)
    assert np.allclose(first_order_prediction(0.125, 0.02, 5.0, t), 2 * base)
    assert np.allclose(first_order_prediction(0.125, 0.01, 5.0, t, 3.0), 3 * base)
    with pytest.raises(ValueError):
        first_order_prediction(0.125, 0.01, np.inf, t)


def test_second_order_template_guards_and_value():
    t = np.array([0.0, 1.0])
    with pytest.raises(ValueError):
        second_order_template(0.5, 0.5, {}, 0.1, 4.0, t)
    with pytest.raises(ValueError):
        second_order_template(1.0, 0.125, {}, 0.1, np.inf, t)
    v = second_order_template(1.0, 0.125, {"D": 1.0}, 0.1, 4.0, np.array([0.0]))
    assert v[0] == pytest.approx(0.01 * 4.0 ** (4 - 2 * 0.125 - 1.0))


def test_gs_ansatz():
    F = lambda u: np.exp(-u)
    v = gs_ansatz(0.125, 1.0, 0.04, np.array([0.0, 2.0]), 1.0, F)
    assert v[0] == pytest.approx(0.04 ** 0.125)
    assert v[1] == pytest.approx(0.04 ** 0.125 * np.exp(-0.08))
    with pytest.raises(ValueError):
        gs_ansatz(0.125, 1.0, 0.0, np.array([1.0]), 1.0, F)


def test_prediction_dispatch():
    t = np.linspace(0.0, 2.0, 5)
    p = ScalingPrediction("bcft", {"x_phi": 0.125, "tau0": 1.0})
    assert np.allclose(p(t), bcft_decay(0.125, 1.0, 1.0, t))
    with pytest.raises(ValueError):
        ScalingPrediction("mystery")


@given(st.floats(min_value=0.05, max_value=1.95).filter(lambda x: abs(x - 1) > 1e-3),
       st.floats(min_value=0.5, max_value=20.0))
@settings(max_examples=40, deadline=None)
def test_first_order_rate_property(x, beta):
    # log-derivative of the prediction tends to 2 pi x / beta at late times
    u0 = 30.0 / x  # late enough that the linear factor's drift is < 1%
    t = np.array([u0 * beta, (u0 + 0.01) * beta])
    v = first_order_prediction(x, 0.01, beta, t)
    rate = -np.diff(np.log(np.abs(v)))[0] / (0.01 * beta)
    assert rate == pytest.approx(2 * np.pi * x / beta, rel=0.01)
