"""Convergence certification for tensor-network trajectories.

A trajectory is certified up to the first time at which any tracked
observable from the two most refined runs differs by more than the
relative tolerance, separately in system size (at the largest bond
dimension) and bond dimension (at the largest size); the certified time
is the minimum over both comparisons.
"""

from __future__ import annotations

import numpy as np


def _pair_time(series_a, series_b, rel_tol, floor_frac):
    ta, va = series_a.times, np.real(series_a.values)
    tb, vb = series_b.times, np.real(series_b.values)
    lo, hi = max(ta[0], tb[0]), min(ta[-1], tb[-1])
    m = (ta >= lo) & (ta <= hi)
    t = ta[m]
    a = va[m]
    b = np.interp(t, tb, vb)
    peak = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), floor_frac * peak)
    rel = np.abs(a - b) / scale
    bad = np.nonzero(rel > rel_tol)[0]
    t_conv = float(t[bad[0]]) if bad.size else float(t[-1])
    return t_conv, float(np.max(rel))


def convergence_certify(runs, rel_tol=0.05, floor_frac=1e-3):
    """Certify a family of runs keyed by (L, chi).

    runs maps (L, chi) -> {observable: TimeSeries}.  Requires at least two
    system sizes at the largest bond dimension and two bond dimensions at
    the largest size.  Returns a dict with the certified time and the
    per-comparison detail.
    """
    keys = list(runs)
    chi_top = max(k[1] for k in keys)
    L_top = max(k[0] for k in keys)
    Ls = sorted({k[0] for k in keys if k[1] == chi_top})
    chis = sorted({k[1] for k in keys if k[0] == L_top})
    if len(Ls) < 2:
        raise ValueError(
            f"need two system sizes at chi={chi_top} to certify, got {Ls}")
    if len(chis) < 2:
        raise ValueError(
            f"need two bond dimensions at L={L_top} to certify, got {chis}")

    comparisons = {
        "system_size": ((Ls[-2], chi_top), (Ls[-1], chi_top)),
        "bond_dimension": ((L_top, chis[-2]), (L_top, chis[-1])),
    }
    detail = {}
    t_conv = np.inf
    for label, (ka, kb) in comparisons.items():
        shared = sorted(set(runs[ka]) & set(runs[kb]))
        if not shared:
            raise ValueError(f"runs {ka} and {kb} share no observables")
        per_obs = {}
        for name in shared:
            tc, worst = _pair_time(runs[ka][name], runs[kb][name],
                                   rel_tol, floor_frac)
            per_obs[name] = {"t_converged": tc, "max_rel_dev": worst}
            t_conv = min(t_conv, tc)
        detail[label] = {"pair": (ka, kb), "observables": per_obs}
    return {"t_converged": float(t_conv), "rel_tol": rel_tol,
            "comparisons": detail}
