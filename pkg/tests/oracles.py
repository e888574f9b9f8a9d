"""Independent numerical oracles used by the test suite.

These deliberately avoid the package's own closed forms: the decaying part
of the boundary one-point function is rebuilt from its defining strip /
plane integrals with adaptive quadrature, and the linear-in-time template
coefficients are extracted by least squares against an exponential basis.
"""

import numpy as np
from scipy.integrate import quad
from scipy.special import hyp2f1


def f_dec(u, delta):
    """Decaying part of the thermal one-point function at rescaled time u.

    Difference of the strip ("inside") and plane ("outside") images of a
    field of dimension delta, integrated from the boundary up to u.
    """

    def inside(rho):
        f = lambda s: np.real(
            (np.cosh(2 * np.pi * rho) - np.cos(2 * np.pi * (s + 1j * u))) ** (-delta))
        val, _ = quad(f, 0.0, 0.5, epsabs=1e-14, epsrel=1e-12, limit=200)
        return 2.0 * val

    def outside(rho):
        q = np.exp(-2 * np.pi * rho)
        return (2 * q) ** delta * hyp2f1(delta, delta, 1.0, q * q)

    val, _ = quad(lambda r: inside(r) - outside(r), 0.0, u,
                  epsabs=1e-14, epsrel=1e-11, limit=300)
    return val


def reconstructed_linear_coefficients(delta, u_values=None):
    """(C1, C2) of f_dec ~ (C1 + C2 u) e^{-2 pi delta u} + subleading.

    Least squares against the basis {1, e1, u e1, e2, u e2, u^2 e2} with
    e1 = e^{-2 pi delta u}, e2 = e^{-2 pi (delta+1) u}; the constant and
    the e2 block absorb the offset and the first subleading image.
    """
    if u_values is None:
        u_values = np.linspace(1.2, 3.2, 11)
    us = np.asarray(u_values, dtype=float)
    F = np.array([f_dec(u, delta) for u in us])
    e1 = np.exp(-2 * np.pi * delta * us)
    e2 = np.exp(-2 * np.pi * (delta + 1) * us)
    basis = np.column_stack([np.ones_like(us), e1, us * e1, e2, us * e2,
                             us ** 2 * e2])
    coef, *_ = np.linalg.lstsq(basis, F, rcond=None)
    return float(coef[1]), float(coef[2])
