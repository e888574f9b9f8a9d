"""Quantitative extraction from observable time series: sliding-window
exponential fits, decay-constant ratios, scaling collapses, and fits of
the second-order relaxation template.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import curve_fit

from .cpt import second_order_template
from .series import TimeSeries


@dataclass
class FitResult:
    """Per-window exponential decay constants lambda(t)."""

    centers: np.ndarray          # window centers, Jt units
    rates: np.ndarray            # lambda per window (decay positive)
    amplitudes: np.ndarray       # fitted |value| at the window center
    goodness: np.ndarray         # RMS of log-residuals per window
    flagged: np.ndarray          # True where the window was not fittable
    window_width: float = 1.0
    method: dict = field(default_factory=dict)

    def valid(self):
        m = ~self.flagged
        return self.centers[m], self.rates[m]


def sliding_exponential_fit(series, window_width=1.0, min_points=8):
    """Log-linear least-squares decay rate in a sliding window.

    Each window of width `window_width` (Jt units) containing at least
    `min_points` samples of consistent sign is fitted as
    log|value| ~ log(amplitude) - lambda * t.  Windows containing
    zero-crossings (or zeros) are flagged, not fitted.
    """
    t = np.asarray(series.times, dtype=float)
    v = np.real(np.asarray(series.values))
    if t.size < min_points:
        raise ValueError(
            f"series has {t.size} samples; need at least {min_points}")
    half = 0.5 * window_width
    centers, rates, amps, good, flags = [], [], [], [], []
    for tc in t:
        if tc - half < t[0] - 1e-12 or tc + half > t[-1] + 1e-12:
            continue
        m = (t >= tc - half) & (t <= tc + half)
        if np.count_nonzero(m) < min_points:
            continue
        tw, vw = t[m], v[m]
        centers.append(tc)
        signs = np.sign(vw)
        if np.any(vw == 0.0) or signs.max() != signs.min():
            rates.append(np.nan)
            amps.append(np.nan)
            good.append(np.nan)
            flags.append(True)
            continue
        y = np.log(np.abs(vw))
        slope, intercept = np.polyfit(tw, y, 1)
        resid = y - (slope * tw + intercept)
        rates.append(-slope)
        amps.append(np.exp(intercept + slope * tc))
        good.append(float(np.sqrt(np.mean(resid ** 2))))
        flags.append(False)
    if not centers:
        raise ValueError("no admissible fit windows inside the data range")
    return FitResult(np.array(centers), np.array(rates), np.array(amps),
                     np.array(good), np.array(flags, dtype=bool),
                     window_width, {"min_points": min_points})


def decay_ratio(fit_a, fit_b, resolution=1e-12):
    """Pointwise lambda_a / lambda_b on the shared window centers.

    Centers present in both fits are divided; points where the denominator
    rate is below `resolution` (or either window was flagged) are masked
    out of the returned series.
    """
    shared, ia, ib = np.intersect1d(
        np.round(fit_a.centers, 10), np.round(fit_b.centers, 10),
        return_indices=True)
    if shared.size == 0:
        raise ValueError("fit results share no window centers")
    la, lb = fit_a.rates[ia], fit_b.rates[ib]
    ok = (~fit_a.flagged[ia]) & (~fit_b.flagged[ib]) & (np.abs(lb) > resolution)
    ts = TimeSeries(shared[ok], la[ok] / lb[ok], "decay_ratio", "analysis",
                    {"n_masked": int(np.count_nonzero(~ok))})
    return ts


@dataclass
class CollapseResult:
    """Residual of a family of curves after parameter rescaling."""

    parameter_values: np.ndarray
    x_power: float
    y_power: float
    grid: np.ndarray             # common rescaled-time grid
    curves: np.ndarray           # (n_curves, n_grid) rescaled values
    residual: float
    log_grid: bool = False

    @property
    def mean_curve(self):
        return self.curves.mean(axis=0)


def scaling_collapse(curves, x_power, y_power, n_grid=200):
    """Collapse a family {p: (t, value)} under power-law rescaling.

    Each curve is transformed t -> t * p^x_power, value -> value * p^y_power,
    interpolated onto the common overlap grid (log-spaced with monotone
    cubic interpolation where all data is strictly positive, linear
    otherwise), and scored by the mean pairwise L2 distance between curves
    normalized by the L2 norm of the mean curve.
    """
    if len(curves) < 3:
        raise ValueError(f"need at least 3 curves, got {len(curves)}")
    keys = sorted(curves)
    resc = []
    for p in keys:
        c = curves[p]
        if isinstance(c, TimeSeries):
            t, v = c.times, np.real(c.values)
        else:
            t, v = np.asarray(c[0], dtype=float), np.asarray(c[1], dtype=float)
        resc.append((t * p ** x_power, v * p ** y_power))
    lo = max(r[0].min() for r in resc)
    hi = min(r[0].max() for r in resc)
    if not (hi > lo):
        raise ValueError(
            f"rescaled curves have no overlapping range ({lo:.3g} vs {hi:.3g})")
    positive = all(np.all(r[1] > 0) for r in resc) and lo > 0
    if positive:
        grid = np.geomspace(lo, hi, n_grid)
        interped = np.array([PchipInterpolator(r[0], r[1])(grid) for r in resc])
    else:
        grid = np.linspace(lo, hi, n_grid)
        interped = np.array([np.interp(grid, r[0], r[1]) for r in resc])
    mean = interped.mean(axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0.0:
        residual = 0.0 if np.allclose(interped, 0.0) else np.inf
    else:
        n = len(keys)
        dists = [np.linalg.norm(interped[i] - interped[j])
                 for i in range(n) for j in range(i + 1, n)]
        residual = float(np.mean(dists) / norm)
    return CollapseResult(np.array(keys, dtype=float), x_power, y_power,
                          grid, interped, residual, log_grid=positive)


def fit_lattice_tail(series, universal_rate, t_min, t_max, J=1.0):
    """Fit the late-time band-edge oscillation riding on the universal decay.

    Model: a * exp(-r t)/sqrt(t) + c * t^p * cos(w t + pi/4), with the
    universal rate r held fixed and (a, c, p, w) free.  Returns a dict with
    the fitted amplitude, tail amplitude, tail exponent, and frequency.
    """
    t = np.asarray(series.times, dtype=float)
    v = np.real(np.asarray(series.values))
    m = (t >= t_min) & (t <= t_max)
    if np.count_nonzero(m) < 16:
        raise ValueError(
            f"tail window [{t_min}, {t_max}] holds {np.count_nonzero(m)} "
            "samples; need at least 16")
    tw, vw = t[m], v[m]

    def model(tt, a, c, p, w):
        return (a * np.exp(-universal_rate * tt) / np.sqrt(J * tt)
                + c * (J * tt) ** p * np.cos(w * tt + np.pi / 4.0))

    scale = np.max(np.abs(vw))
    p0 = [scale, -scale, -1.5, 8.0 * J]
    popt, _ = curve_fit(model, tw, vw, p0=p0, maxfev=40000)
    resid = model(tw, *popt) - vw
    return {"amplitude": float(popt[0]), "tail_amplitude": float(popt[1]),
            "tail_exponent": float(popt[2]), "frequency": float(popt[3]),
            "rms": float(np.sqrt(np.mean(resid ** 2)))}


def fit_second_order(series, x_phi, x_psi, beta, g=1.0):
    """Fit the O(g^2) template to a series by multi-start least squares.

    Initialization follows the template's structure: D from the value at
    t=0 scaled by an e-folding heuristic, E = value(0) - D, F = G = 0;
    the starts sweep the sign patterns of (D, E).  Returns
    (coefficients dict, rms residual).
    """
    if x_psi == x_phi:
        raise ValueError("second-order fits require x_psi != x_phi")
    t = np.asarray(series.times, dtype=float)
    v = np.real(np.asarray(series.values))
    pref = g * g * beta ** (4.0 - 2.0 * x_psi - x_phi)
    if np.allclose(v, 0.0):
        return {"D": 0.0, "E": 0.0, "F": 0.0, "G": 0.0}, 0.0

    def model(tt, D, E, F, G):
        return second_order_template(
            x_phi, x_psi, {"D": D, "E": E, "F": F, "G": G}, g, beta, tt)

    v0 = v[0] / pref
    best = None
    for sd in (1.0, -1.0, 0.5, 2.0):
        d0 = sd * v0 * 0.5
        for se in (1.0, -1.0):
            p0 = [d0, se * abs(v0 - d0), 0.0, 0.0]
            try:
                popt, _ = curve_fit(model, t, v, p0=p0, maxfev=20000)
            except RuntimeError:
                continue
            rms = float(np.sqrt(np.mean((model(t, *popt) - v) ** 2)))
            if best is None or rms < best[1]:
                best = (popt, rms)
    if best is None:
        raise RuntimeError("no fit start converged for the second-order template")
    popt, rms = best
    return dict(zip("DEFG", (float(c) for c in popt))), rms
