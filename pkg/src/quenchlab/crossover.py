"""Crossover times between the universal exponential decay and the
oscillatory lattice tail, via the lower real branch of the Lambert W
function, plus the power-law/logarithmic refits of those formulas.
"""

from __future__ import annotations

import numpy as np

_INV_E = -np.exp(-1.0)


def lambert_w_minus1(z, tol=1e-12, max_iter=100):
    """W_{-1}(z) on the real branch, for z in [-1/e, 0).

    Halley iteration from an asymptotic initial guess, converged to a
    residual |w e^w - z| <= tol * max(|z|, 1e-300).
    """
    z = float(z)
    if not (_INV_E <= z < 0.0):
        raise ValueError(
            f"W_-1 is real only for z in [-1/e, 0); got z = {z:.6g}")
    if z == _INV_E:
        return -1.0
    # near the branch point use the square-root expansion, otherwise the
    # double-log asymptote of the lower branch
    p2 = 2.0 * (np.e * z + 1.0)
    if p2 < 1e-2:
        p = -np.sqrt(p2)
        w = -1.0 + p - p * p / 3.0 + 11.0 * p ** 3 / 72.0
    else:
        l1 = np.log(-z)
        l2 = np.log(-l1)
        w = l1 - l2 + l2 / l1
    target = tol * max(abs(z), 1e-300)
    for _ in range(max_iter):
        ew = np.exp(w)
        f = w * ew - z
        fp = ew * (1.0 + w)
        fpp = ew * (2.0 + w)
        step = f / (fp - 0.5 * f * fpp / fp)
        w = w - step
        # near the branch point the residual criterion alone is loose
        # (f' -> 0 as w -> -1), so also require a converged iterate
        if abs(f) <= target and abs(step) <= tol * max(1.0, abs(w)):
            return float(w)
    ew = np.exp(w)
    if abs(w * ew - z) <= target:
        return float(w)
    raise RuntimeError(f"Halley iteration failed to converge for z = {z:.6g}")


def _gs_argument(g):
    return -g ** 1.5 / (abs(2.0 - g) * np.sqrt(2.0))


def _thermal_argument(g, beta, J):
    bJ = beta * J
    c = (np.pi ** 2 * np.tanh(abs(2.0 - g) * bJ) / (abs(2.0 - g) * np.sqrt(2.0)))
    return -(1.0 / (6.0 * bJ)) * c ** (2.0 / 3.0)


def crossover_times(g, beta=np.inf, J=1.0):
    """Universal-to-tail crossover times of the epsilon decay.

    Ground-state branch:  J g t* = -(1/4) W_{-1}(-g^{3/2} / (|2-g| sqrt 2));
    thermal branch:       t*/beta = -(3/(4 pi)) W_{-1}(thermal argument).
    Returns {"t_star_gs": ..., "t_star_thermal": ...} with the thermal
    entry None at beta = infinity.
    """
    if not (0.0 < g < 2.0):
        raise ValueError(f"crossover formulas need 0 < g < 2, got g = {g}")
    t_gs = -0.25 * lambert_w_minus1(_gs_argument(g)) / (J * g)
    t_th = None
    if np.isfinite(beta):
        t_th = -(3.0 / (4.0 * np.pi)) * lambert_w_minus1(
            _thermal_argument(g, beta, J)) * beta
    return {"t_star_gs": t_gs, "t_star_thermal": t_th}


def refit_gs_powerlaw(g_window=(1e-3, 1.2e-2), n=25, J=1.0):
    """Effective power law J g t* ~ a g^{-p} of the ground-state branch.

    Log-log least squares over a log-spaced grid; the Lambert-W expression
    is only locally a power law, so (a, p) depend on the window.  The
    default window reproduces the quoted constants a ~ 1.37, p ~ 0.14.
    """
    gs = np.logspace(np.log10(g_window[0]), np.log10(g_window[1]), n)
    y = np.array([J * g * crossover_times(g, J=J)["t_star_gs"] for g in gs])
    slope, intercept = np.polyfit(np.log(gs), np.log(y), 1)
    return float(np.exp(intercept)), float(-slope)


def refit_thermal_log(beta_window=(2e2, 2e4), g=0.1, n=25, J=1.0):
    """Effective logarithm t*/beta ~ a' log(b' beta J) of the thermal branch.

    Linear least squares of t*/beta against log(beta J) over a log-spaced
    grid; the default window reproduces a' ~ 0.26, b' ~ 9.88.
    """
    betas = np.logspace(np.log10(beta_window[0]), np.log10(beta_window[1]), n)
    y = np.array([crossover_times(g, beta=b, J=J)["t_star_thermal"] / b
                  for b in betas])
    slope, intercept = np.polyfit(np.log(betas * J), y, 1)
    return float(slope), float(np.exp(intercept / slope))
