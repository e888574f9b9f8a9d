"""Closed-form relaxation predictions near a critical point.

Four functional families cover the quench protocols:

  * bcft_decay        -- pure exponential from a smoothed conformal
                         boundary state (extrapolation length tau0, which
                         maps to an effective temperature beta = 4 tau0);
  * first-order forms -- the O(g) finite-temperature prediction
                         g beta^{2-2x} (A + B t/beta) e^{-2 pi x t/beta}
                         with universal constants A, B per dimension x;
  * second-order form -- the O(g^2) template with free coefficients
                         D, E, F, G (fitted, not predicted);
  * gs_ansatz         -- the ground-state scaling form
                         amplitude g^{x nu} F(Delta t), gap Delta = J g^nu.

Overall lattice-to-continuum amplitudes are not predicted; comparisons fit
one global amplitude per curve family.  Only ratios and exponents are
treated as quantitative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import digamma

EULER_GAMMA = float(np.euler_gamma)

#: quasiparticle velocity (units of J) entering the constant B; model
#: dependent, 2.0 for the critical Ising chain
DEFAULT_VELOCITY = 2.0


def beta_from_tau0(tau0):
    """Effective inverse temperature of a smoothed boundary state."""
    if tau0 <= 0:
        raise ValueError(f"tau0 must be positive, got {tau0}")
    return 4.0 * tau0


def bcft_decay(x_phi, tau0, amplitude, t):
    """amplitude * (pi/2tau0)^x * exp(-x pi t / (2 tau0))."""
    if tau0 <= 0:
        raise ValueError(f"tau0 must be positive, got {tau0}")
    t = np.asarray(t, dtype=float)
    return amplitude * (np.pi / (2.0 * tau0)) ** x_phi * np.exp(
        -x_phi * np.pi * t / (2.0 * tau0))


def _sinpi(x):
    """sin(pi x), exactly zero at integer x (so B(1) vanishes identically)."""
    if x == round(x):
        return 0.0
    return float(np.sin(np.pi * x))


def _bracket(x):
    """The universal combination multiplying A, written pole-free.

    Equals 1 + (sin(pi x)/pi) (1/x - gamma_E - pi csc(pi x) - psi(1-x));
    the reflection formula psi(1-x) = psi(x) + pi cot(pi x) turns it into
    (1/pi) [sin(pi x)(1/x - gamma_E - psi(x)) - pi cos(pi x)], which is
    regular on all of (0, 2) including the removable point x = 1.
    """
    x = float(x)
    s = _sinpi(x)
    return (s * (1.0 / x - EULER_GAMMA - digamma(x)) - np.pi * np.cos(np.pi * x)) / np.pi


def first_order_constants(x_phi, velocity=DEFAULT_VELOCITY):
    """Universal first-order constants {A, B} for scaling dimension x_phi.

    B = v (2 pi)^{2x} * 2 sin(pi x) / (pi x) vanishes at x = 1 (the linear
    in t term drops out there); A = v (2 pi)^{2x} bracket / (pi x) stays
    finite by the removable limit.
    """
    x = float(x_phi)
    if not (0.0 < x < 2.0):
        raise ValueError(
            f"first-order constants are defined for 0 < x < 2 (relevant "
            f"fields), got x = {x}")
    pref = velocity * (2.0 * np.pi) ** (2.0 * x) / (np.pi * x)
    return {"A": pref * _bracket(x), "B": pref * 2.0 * _sinpi(x)}


def first_order_ratio(x_phi):
    """A/B = bracket / (2 sin(pi x)); diverges at x = 1 where B = 0."""
    x = float(x_phi)
    s = _sinpi(x)
    if s == 0.0:
        raise ZeroDivisionError("A/B diverges at x = 1 (B = 0)")
    return _bracket(x) / (2.0 * s)


def first_order_prediction(x_phi, g, beta, t, overall_amplitude=1.0,
                           velocity=DEFAULT_VELOCITY):
    """O(g) thermal prediction g beta^{2-2x} (A + B t/beta) e^{-2 pi x t/beta}.

    Valid when the perturbing and measured fields coincide (x_psi = x_phi).
    """
    if not (beta > 0) or not np.isfinite(beta):
        raise ValueError(f"beta must be finite and positive, got {beta}")
    c = first_order_constants(x_phi, velocity)
    t = np.asarray(t, dtype=float)
    return (overall_amplitude * g * beta ** (2.0 - 2.0 * x_phi)
            * (c["A"] + c["B"] * t / beta)
            * np.exp(-2.0 * np.pi * x_phi * t / beta))


def second_order_template(x_phi, x_psi, coeffs, g, beta, t):
    """O(g^2) template for x_psi != x_phi with fitted coefficients.

    g^2 beta^{4-2x_psi-x_phi} [D e^{-4 pi x_psi t/beta}
       + (E + F t/beta + G t^2/beta^2) e^{-2 pi x_phi t/beta}];
    coeffs maps {"D", "E", "F", "G"} to floats.
    """
    if x_psi == x_phi:
        raise ValueError(
            "the second-order template requires x_psi != x_phi; use the "
            "first-order prediction for coinciding dimensions")
    if not (beta > 0) or not np.isfinite(beta):
        raise ValueError(f"beta must be finite and positive, got {beta}")
    D = coeffs.get("D", 0.0)
    E = coeffs.get("E", 0.0)
    F = coeffs.get("F", 0.0)
    G = coeffs.get("G", 0.0)
    t = np.asarray(t, dtype=float)
    u = t / beta
    return (g * g * beta ** (4.0 - 2.0 * x_psi - x_phi)
            * (D * np.exp(-4.0 * np.pi * x_psi * u)
               + (E + F * u + G * u * u) * np.exp(-2.0 * np.pi * x_phi * u)))


def gs_ansatz(x_phi, nu, g, t, amplitude, F, J=1.0):
    """Ground-state scaling form amplitude * g^{x nu} * F(Delta t).

    F is a caller-supplied scaling function (callable of Delta*t); the gap
    model is Delta = J g^nu.
    """
    if g <= 0:
        raise ValueError(f"gs_ansatz requires g > 0, got {g}")
    delta = J * g ** nu
    t = np.asarray(t, dtype=float)
    return amplitude * g ** (x_phi * nu) * F(delta * t)


@dataclass
class ScalingPrediction:
    """A named prediction bound to its parameters, evaluable on any grid."""

    form: str                       # bcft | first_order | second_order | gs_ansatz
    params: dict = field(default_factory=dict)

    _FORMS = ("bcft", "first_order", "second_order", "gs_ansatz")

    def __post_init__(self):
        if self.form not in self._FORMS:
            raise ValueError(f"unknown prediction form {self.form!r}")

    def __call__(self, t):
        p = self.params
        if self.form == "bcft":
            return bcft_decay(p["x_phi"], p["tau0"], p.get("amplitude", 1.0), t)
        if self.form == "first_order":
            return first_order_prediction(
                p["x_phi"], p["g"], p["beta"], t,
                p.get("amplitude", 1.0), p.get("velocity", DEFAULT_VELOCITY))
        if self.form == "second_order":
            return second_order_template(
                p["x_phi"], p["x_psi"], p.get("coeffs", {}), p["g"], p["beta"], t)
        return gs_ansatz(p["x_phi"], p["nu"], p["g"], t,
                         p.get("amplitude", 1.0), p["F"], p.get("J", 1.0))
