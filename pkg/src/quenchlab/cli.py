"""Experiment runner: declarative manifests, deterministic CSV artifacts,
and plain-text reports.

Manifests are configparser (INI) documents; every output CSV header embeds
the complete manifest as `manifest:<section>.<key>` provenance lines, so an
artifact reconstructs its recipe.  Subcommands: run, list, validate,
report.  Exit codes: 0 success, 1 validation failure, 2 runtime failure.
QUENCHLAB_THREADS caps the worker pool for sweep points.
"""

from __future__ import annotations

import argparse
import configparser
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import numpy as np

from . import analysis, freefermion
from .crossover import crossover_times, refit_gs_powerlaw, refit_thermal_log
from .integrals import AsymptoteParams, lattice_tail
from .models import (FIELD_LABELS, KINDS, build_model, field_terms_at,
                     perturbation, primary_field_operator)
from .mps import (TrotterPlan, bcft_state, chain_of, dmrg_ground_state,
                  real_tebd, thermal_purification)
from .mps.ed import (MAX_DENSE_DIM, dense_gibbs, dense_ground, ed_reference)
from .series import TimeSeries

ENGINES = ("freefermion", "mps", "ed")
INITIAL_TYPES = ("ground", "thermal", "bcft")
_SWEEP_FOR = {"ground": "g", "thermal": "beta", "bcft": "tau0"}


class ValidationFailure(Exception):
    def __init__(self, problems):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


# -- manifests ---------------------------------------------------------------

def load_manifest(source):
    """Parse a manifest file (or literal text) into {section: {key: str}}."""
    cp = configparser.ConfigParser(interpolation=None)
    if "\n" in str(source):
        cp.read_string(source)
    else:
        if not os.path.exists(source):
            raise FileNotFoundError(f"manifest not found: {source}")
        with open(source) as fh:
            cp.read_string(fh.read())
    return {sec: dict(cp[sec]) for sec in cp.sections()}


def bundled_manifests():
    """{name: text} for every manifest shipped with the package."""
    out = {}
    root = resources.files("quenchlab") / "manifests"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".cfg"):
            out[entry.name[:-4]] = entry.read_text()
    return out


def resolve_manifest(name_or_path):
    """Accept a bundled manifest name or a filesystem path."""
    bundled = bundled_manifests()
    if name_or_path in bundled:
        return load_manifest(bundled[name_or_path])
    return load_manifest(name_or_path)


def _floats(text):
    return [float(x) for x in text.split()]


def validate_manifest(m):
    """Return the list of all constraint violations (empty when valid)."""
    problems = []

    def get(sec, key, default=None):
        return m.get(sec, {}).get(key, default)

    exp_id = get("experiment", "id", "")
    if not exp_id:
        problems.append("experiment.id is missing or empty")
    exp_type = get("experiment", "type", "quench")
    if exp_type not in ("quench", "crossover"):
        problems.append(f"experiment.type {exp_type!r} is not quench|crossover")
        return problems

    if exp_type == "crossover":
        try:
            gv = _floats(get("crossover", "g_values", ""))
        except ValueError:
            gv = None
            problems.append("crossover.g_values is not a float list")
        if gv is not None:
            if not gv:
                problems.append("crossover.g_values is empty")
            elif not all(0.0 < g < 2.0 for g in gv):
                problems.append("crossover.g_values must lie in (0, 2)")
        try:
            beta = float(get("crossover", "beta", "inf"))
            if not beta > 0:
                problems.append("crossover.beta must be positive")
        except ValueError:
            problems.append("crossover.beta is not a float")
        return problems

    kind = get("model", "kind", "")
    if kind not in KINDS:
        problems.append(f"model.kind {kind!r} is not one of {KINDS}")
    try:
        L = int(get("model", "l", "0"))
        if L < 2:
            problems.append(f"model.L must be >= 2, got {L}")
    except ValueError:
        L = 0
        problems.append("model.L is not an integer")
    boundary = get("model", "boundary", "open")
    if boundary not in ("open", "periodic"):
        problems.append(f"model.boundary {boundary!r} is not open|periodic")

    engine = get("engine", "name", "")
    if engine not in ENGINES:
        problems.append(f"engine.name {engine!r} is not one of {ENGINES}")
    if engine == "freefermion" and kind and kind != "TFI":
        problems.append(
            f"engine freefermion is TFI-only; model.kind is {kind!r}")
    if engine == "mps" and boundary != "open":
        problems.append("engine mps requires model.boundary = open")
    if engine == "ed" and kind in KINDS and L:
        d = 3 if kind == "Potts" else 2
        if d ** L > MAX_DENSE_DIM:
            problems.append(
                f"engine ed limited to dimension {MAX_DENSE_DIM}; "
                f"{kind} L={L} gives {d ** L}")

    init_type = get("initial", "type", "")
    if init_type not in INITIAL_TYPES:
        problems.append(
            f"initial.type {init_type!r} is not one of {INITIAL_TYPES}")
    else:
        expected = _SWEEP_FOR[init_type]
        sweep = get("initial", "sweep", expected)
        if sweep != expected:
            problems.append(
                f"initial.type {init_type} sweeps {expected!r}, "
                f"manifest says {sweep!r}")
        if init_type == "bcft" and engine == "freefermion":
            problems.append(
                "boundary-state preparation is not available on the "
                "freefermion engine")
        if init_type == "thermal":
            fld = get("initial", "field", "epsilon")
            if fld not in ("epsilon", "sigma"):
                problems.append(
                    f"initial.field {fld!r} is not epsilon|sigma")
            if fld == "sigma" and engine == "freefermion":
                problems.append(
                    "a sigma (order-parameter) perturbation is not "
                    "quadratic; use the mps or ed engine")
    try:
        values = _floats(get("initial", "values", ""))
        if not values:
            problems.append("initial.values is empty")
        elif not all(v > 0 for v in values):
            problems.append("initial.values must be positive")
    except ValueError:
        problems.append("initial.values is not a float list")

    fields = get("observables", "fields", "").split()
    if not fields:
        problems.append("observables.fields is empty")
    elif kind in KINDS:
        for f in fields:
            if f not in FIELD_LABELS[kind]:
                problems.append(
                    f"observable {f!r} is not defined for {kind}; "
                    f"valid: {FIELD_LABELS[kind]}")
    try:
        t_max = float(get("time", "t_max", "0"))
        if not t_max > 0:
            problems.append("time.t_max must be positive")
    except ValueError:
        problems.append("time.t_max is not a float")

    for key in ("fit", "ratio", "collapse_fields", "tail_fit",
                "second_order"):
        for f in m.get("analysis", {}).get(key, "").split():
            if fields and f not in fields:
                problems.append(
                    f"analysis.{key} references {f!r}, which is not in "
                    "observables.fields")
    ratio = m.get("analysis", {}).get("ratio", "").split()
    if ratio and len(ratio) != 2:
        problems.append("analysis.ratio needs exactly two observable names")
    return problems


# -- engines -----------------------------------------------------------------

def _observable_terms(kind, L, boundary, fields):
    center = L // 2
    if kind == "ANNNI":
        # keep windows clear of the fused-pair boundary
        center = (L // 2) & ~1
    return {f: field_terms_at(primary_field_operator(kind, f), center, L,
                              boundary)
            for f in fields}


def _run_point_freefermion(cfg, value):
    kind, L, J, gamma, boundary = cfg["model"]
    init_type, field, strength = cfg["initial"]
    t_max, n_samples = cfg["time_ff"]
    critical = build_model(kind, L, J=J, g=0.0, gamma=gamma, boundary=boundary)
    hq_crit = freefermion.jordan_wigner(critical)
    if init_type == "ground":
        model_init = build_model(kind, L, J=J, g=value, gamma=gamma,
                                 boundary=boundary)
        Gamma0 = freefermion.ground_covariance(
            freefermion.jordan_wigner(model_init))
    else:  # thermal epsilon
        model_init = build_model(kind, L, J=J, g=strength, gamma=gamma,
                                 boundary=boundary)
        Gamma0 = freefermion.thermal_covariance(
            freefermion.jordan_wigner(model_init), value)
    times = np.linspace(0.0, t_max, n_samples)
    out = {}
    for f in cfg["fields"]:
        if f == "sigma":
            out[f] = freefermion.order_parameter_series(Gamma0, hq_crit, times)
        else:
            out[f] = freefermion.epsilon_series(Gamma0, hq_crit, times)
    return out


def _run_point_mps(cfg, value):
    kind, L, J, gamma, boundary = cfg["model"]
    init_type, field, strength = cfg["initial"]
    t_max, dt, order, sample_every, chi_max, dtau, trunc_tol = cfg["mps"]
    critical = build_model(kind, L, J=J, g=0.0, gamma=gamma, boundary=boundary)
    if init_type == "ground":
        model_init = build_model(kind, L, J=J, g=value, gamma=gamma,
                                 boundary=boundary)
        state, _, _ = dmrg_ground_state(model_init, chi_max=chi_max)
    elif init_type == "thermal":
        if field == "epsilon":
            model_init = build_model(kind, L, J=J, g=strength, gamma=gamma,
                                     boundary=boundary)
            state = thermal_purification(model_init, value, dtau=dtau,
                                         chi_max=chi_max, trunc_tol=trunc_tol)
        else:
            state = thermal_purification(
                critical, value, dtau=dtau, chi_max=chi_max,
                trunc_tol=trunc_tol,
                perturbations=[perturbation(kind, "sigma", strength * J)])
    else:  # bcft
        state = bcft_state(critical, value, dtau=dtau, chi_max=chi_max,
                           trunc_tol=trunc_tol)
    terms = _observable_terms(kind, L, boundary, cfg["fields"])
    plan = TrotterPlan(order=order, dt=dt)
    series, _ = real_tebd(state, critical, t_max, plan=plan,
                          observables=terms, chi_max=chi_max,
                          trunc_tol=trunc_tol, sample_every=sample_every)
    return series


def _run_point_ed(cfg, value):
    kind, L, J, gamma, boundary = cfg["model"]
    init_type, field, strength = cfg["initial"]
    t_max, n_samples = cfg["time_ff"]
    critical = build_model(kind, L, J=J, g=0.0, gamma=gamma, boundary=boundary)
    pin = [perturbation(kind, "sigma", 1e-4 * J)]
    if init_type == "ground":
        model_init = build_model(kind, L, J=J, g=value, gamma=gamma,
                                 boundary=boundary)
        _, initial = dense_ground(model_init, perturbations=pin)
    elif init_type == "thermal":
        if field == "epsilon":
            model_init = build_model(kind, L, J=J, g=strength, gamma=gamma,
                                     boundary=boundary)
            initial = dense_gibbs(model_init, value)
        else:
            initial = dense_gibbs(
                critical, value,
                perturbations=[perturbation(kind, "sigma", strength * J)])
    else:  # bcft: exp(-tau0 H_crit) |ordered>
        from .models import dense_hamiltonian
        H = dense_hamiltonian(critical)
        w, v = np.linalg.eigh(H)
        psi0 = np.zeros(len(H))
        psi0[0] = 1.0
        psi = v @ (np.exp(-value * (w - w[0])) * (v.conj().T @ psi0))
        initial = psi / np.linalg.norm(psi)
    times = np.linspace(0.0, t_max, n_samples)
    terms = _observable_terms(kind, L, boundary, cfg["fields"])
    return ed_reference(critical, initial, times, terms)


def _equilibrium_values(cfg):
    """Critical-ground-state expectation of each observable (the offset
    subtracted before fitting bcft/ground epsilon decays)."""
    kind, L, J, gamma, boundary = cfg["model"]
    critical = build_model(kind, L, J=J, g=0.0, gamma=gamma,
                           boundary=boundary)
    terms = _observable_terms(kind, L, boundary, cfg["fields"])
    out = {}
    if cfg["engine"] == "freefermion":
        hq = freefermion.jordan_wigner(critical)
        Gamma = freefermion.ground_covariance(hq)
        for f, tt in terms.items():
            if f == "sigma":
                out[f] = 0.0
            else:
                out[f] = freefermion.epsilon_expectation(Gamma)
    elif cfg["engine"] == "ed":
        from .models import dense_operator
        _, psi = dense_ground(critical)
        for f, tt in terms.items():
            O = dense_operator(L, critical.local_dim, tt)
            out[f] = float(np.real(psi.conj() @ O @ psi))
    else:
        chi_max = cfg["mps"][4]
        state, _, _ = dmrg_ground_state(critical, chi_max=chi_max,
                                        pinning=None)
        chain = chain_of(critical)
        for f, tt in terms.items():
            val = chain.expectation_terms(state, tt)
            # symmetric ground state: the order parameter averages to zero
            out[f] = 0.0 if f == "sigma" else float(np.real(val))
    return out


# -- running -----------------------------------------------------------------

def _parse_quench_config(m):
    get = lambda s, k, d=None: m.get(s, {}).get(k, d)
    cfg = {
        "id": get("experiment", "id"),
        "desk_scale": get("experiment", "desk_scale", "false").lower()
        == "true",
        "engine": get("engine", "name"),
        "model": (get("model", "kind"), int(get("model", "l")),
                  float(get("model", "j", "1.0")),
                  float(get("model", "gamma", "0.0")),
                  get("model", "boundary", "open")),
        "initial": (get("initial", "type"),
                    get("initial", "field", "epsilon"),
                    float(get("initial", "g", "0.0"))),
        "sweep_name": _SWEEP_FOR[get("initial", "type")],
        "values": _floats(get("initial", "values")),
        "fields": get("observables", "fields").split(),
        "time_ff": (float(get("time", "t_max")),
                    int(get("time", "n_samples", "201"))),
        "mps": (float(get("time", "t_max")),
                float(get("engine", "dt", "0.1")),
                int(get("engine", "order", "4")),
                int(get("time", "sample_every", "1")),
                int(get("engine", "chi_max", "64")),
                float(get("engine", "dtau", "0.01")),
                float(get("engine", "trunc_tol", "1e-14"))),
        "t_max_scale": get("time", "t_max_scale", "none"),
        "analysis": m.get("analysis", {}),
    }
    return cfg


def _scaled_point_cfg(cfg, value):
    """Apply per-sweep-point time scaling (t_max_scale = sweep)."""
    if cfg["t_max_scale"] != "sweep":
        return cfg
    out = dict(cfg)
    t_max, n_samples = cfg["time_ff"]
    out["time_ff"] = (t_max * value, n_samples)
    mps = list(cfg["mps"])
    mps[0] = t_max * value
    out["mps"] = tuple(mps)
    return out


def _manifest_provenance(m):
    prov = {}
    for sec in sorted(m):
        for key in sorted(m[sec]):
            prov[f"manifest:{sec}.{key}"] = m[sec][key]
    return prov


def _atomic_write(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _fit_csv(fit, provenance):
    lines = [f"# {k} = {provenance[k]}" for k in sorted(provenance)]
    lines.append("center,rate,amplitude,goodness,flagged")
    for i in range(len(fit.centers)):
        lines.append(f"{fit.centers[i]:.12g},{fit.rates[i]:.16g},"
                     f"{fit.amplitudes[i]:.16g},{fit.goodness[i]:.6g},"
                     f"{int(fit.flagged[i])}")
    return "\n".join(lines) + "\n"


def _collapse_csv(res, provenance):
    lines = [f"# {k} = {provenance[k]}" for k in sorted(provenance)]
    header = "x," + ",".join(f"p={p:g}" for p in res.parameter_values)
    lines.append(header)
    for i, x in enumerate(res.grid):
        row = f"{x:.12g}," + ",".join(f"{res.curves[j, i]:.16g}"
                                      for j in range(len(res.parameter_values)))
        lines.append(row)
    return "\n".join(lines) + "\n"


def _median_valid_rate(fit):
    _, rates = fit.valid()
    return float(np.median(rates)) if rates.size else float("nan")


def run_crossover(m, outdir):
    os.makedirs(outdir, exist_ok=True)
    prov = _manifest_provenance(m)
    gv = _floats(m["crossover"]["g_values"])
    beta = float(m["crossover"].get("beta", "inf"))
    lines = [f"# {k} = {prov[k]}" for k in sorted(prov)]
    lines.append("g,t_star_gs,t_star_thermal")
    report = [f"experiment {m['experiment']['id']}", "crossover table"]
    for g in gv:
        times = crossover_times(g, beta=beta)
        th = times["t_star_thermal"]
        lines.append(f"{g:.12g},{times['t_star_gs']:.12g},"
                     f"{'' if th is None else format(th, '.12g')}")
    _atomic_write(os.path.join(outdir, "crossover.csv"),
                  "\n".join(lines) + "\n")
    if m["crossover"].get("refit", "false").lower() == "true":
        a, p = refit_gs_powerlaw()
        ap, bp = refit_thermal_log()
        report.append(f"refit gs: a={a:.4g} p={p:.4g}")
        report.append(f"refit thermal: a'={ap:.4g} b'={bp:.4g}")
    _atomic_write(os.path.join(outdir, "report.txt"),
                  "\n".join(report) + "\n")
    return outdir


def run_manifest(m, outdir=None):
    """Execute a validated manifest; returns the artifact directory."""
    problems = validate_manifest(m)
    if problems:
        raise ValidationFailure(problems)
    exp_id = m["experiment"]["id"]
    if outdir is None:
        outdir = m.get("output", {}).get("directory",
                                         os.path.join("runs", exp_id))
    if m["experiment"].get("type", "quench") == "crossover":
        return run_crossover(m, outdir)

    os.makedirs(outdir, exist_ok=True)
    cfg = _parse_quench_config(m)
    prov = _manifest_provenance(m)
    runner = {"freefermion": _run_point_freefermion,
              "mps": _run_point_mps,
              "ed": _run_point_ed}[cfg["engine"]]

    n_threads = max(1, int(os.environ.get("QUENCHLAB_THREADS", "1")))
    points = cfg["values"]

    def compute(value):
        return runner(_scaled_point_cfg(cfg, value), value)

    if n_threads > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            results = list(pool.map(compute, points))
    else:
        results = [compute(v) for v in points]

    ana = cfg["analysis"]
    sweep = cfg["sweep_name"]
    report = [f"experiment {exp_id}"]
    if cfg["desk_scale"]:
        report.append("note: desk-scale substitution of the published "
                      "system sizes / bond dimensions")

    offsets = {f: 0.0 for f in cfg["fields"]}
    if ana.get("subtract_equilibrium", "false").lower() == "true":
        offsets = _equilibrium_values(cfg)
        for f in cfg["fields"]:
            report.append(f"equilibrium offset {f}: {offsets[f]:.10g}")

    def analysis_series(series, value):
        """Fit-ready copy: offsets and optional lattice tail removed."""
        vals = np.real(series.values) - offsets[series.observable]
        t = series.times
        if (ana.get("subtract_lattice_tail", "false").lower() == "true"
                and series.observable == "epsilon"):
            beta = value if cfg["initial"][0] == "thermal" else np.inf
            g_eff = (cfg["initial"][2] if cfg["initial"][0] == "thermal"
                     else value)
            params = AsymptoteParams(g=g_eff, beta=beta,
                                     J=cfg["model"][2])
            pos = t > 0
            vals = vals.copy()
            vals[pos] = vals[pos] - lattice_tail(params, t[pos])
            vals = vals[pos]
            t = t[pos]
        return TimeSeries(t, vals, series.observable, series.engine,
                          dict(series.provenance))

    fit_fields = ana.get("fit", "").split()
    window = float(ana.get("fit_window", "1.0"))
    fit_lo = ana.get("fit_t_min")
    fit_hi = ana.get("fit_t_max")
    fit_scale = ana.get("fit_scale", "none")
    fits = []  # per point: {field: FitResult}
    for value, series_map in zip(points, results):
        for f, ts in series_map.items():
            ts.provenance.update(prov)
            _atomic_write(
                os.path.join(outdir, f"{f}_{sweep}{value:g}.csv"),
                ts.to_csv())
        point_fits = {}
        for f in fit_fields:
            ts = analysis_series(series_map[f], value)
            lo = -np.inf if fit_lo is None else float(fit_lo)
            hi = np.inf if fit_hi is None else float(fit_hi)
            if fit_scale == "sweep":
                lo, hi = lo * value, hi * value
            try:
                fr = analysis.sliding_exponential_fit(
                    ts.restricted(lo, hi), window_width=window)
            except ValueError as exc:
                report.append(f"fit {f} {sweep}={value:g}: no fit ({exc})")
                continue
            point_fits[f] = fr
            _atomic_write(
                os.path.join(outdir, f"fit_{f}_{sweep}{value:g}.csv"),
                _fit_csv(fr, prov))
            report.append(f"fit {f} {sweep}={value:g}: "
                          f"median_rate={_median_valid_rate(fr):.6g} "
                          f"windows={len(fr.centers)}")
        fits.append(point_fits)

    ratio = ana.get("ratio", "").split()
    if len(ratio) == 2:
        fa, fb = ratio
        for value, pf in zip(points, fits):
            if fa in pf and fb in pf:
                try:
                    rts = analysis.decay_ratio(pf[fa], pf[fb])
                except ValueError as exc:
                    report.append(
                        f"ratio {fa}/{fb} {sweep}={value:g}: none ({exc})")
                    continue
                mean = float(np.mean(np.real(rts.values)))
                report.append(f"ratio {fa}/{fb} {sweep}={value:g}: "
                              f"mean={mean:.6g} n={len(rts.times)}")
                rts.provenance.update(prov)
                _atomic_write(
                    os.path.join(outdir,
                                 f"ratio_{fa}_{fb}_{sweep}{value:g}.csv"),
                    rts.to_csv())

    coll_fields = ana.get("collapse_fields", "").split()
    if coll_fields:
        xp = float(ana.get("collapse_x_power", "1.0"))
        yps = [float(y) for y in ana.get("collapse_y_powers", "0").split()]
        if len(yps) == 1:
            yps = yps * len(coll_fields)
        for f, yp in zip(coll_fields, yps):
            curves = {v: analysis_series(r[f], v)
                      for v, r in zip(points, results)}
            try:
                res = analysis.scaling_collapse(curves, xp, yp)
            except ValueError as exc:
                report.append(f"collapse {f}: not computed ({exc})")
                continue
            report.append(f"collapse {f}: x_power={xp:g} y_power={yp:g} "
                          f"residual={res.residual:.6g}")
            _atomic_write(os.path.join(outdir, f"collapse_{f}.csv"),
                          _collapse_csv(res, prov))

    for f in ana.get("tail_fit", "").split():
        rate = float(ana.get("tail_rate", "0.0"))
        lo = float(ana.get("tail_t_min", "25"))
        hi = float(ana.get("tail_t_max", "60"))
        for value, series_map in zip(points, results):
            ts = TimeSeries(series_map[f].times,
                            np.real(series_map[f].values) - offsets[f],
                            f, series_map[f].engine, {})
            tf = analysis.fit_lattice_tail(ts, rate, lo, hi,
                                           J=cfg["model"][2])
            report.append(
                f"tail {f} {sweep}={value:g}: "
                f"frequency={tf['frequency']:.6g} "
                f"exponent={tf['tail_exponent']:.6g} "
                f"amplitude={tf['tail_amplitude']:.6g}")

    for f in ana.get("second_order", "").split():
        kind = cfg["model"][0]
        x_phi = float(primary_field_operator(kind, f).scaling_dimension)
        x_psi = float(primary_field_operator(
            kind, cfg["initial"][1]).scaling_dimension)
        for value, series_map in zip(points, results):
            ts = analysis_series(series_map[f], value)
            beta = value if cfg["initial"][0] == "thermal" else np.inf
            if not math.isfinite(beta):
                continue
            coeffs, rms = analysis.fit_second_order(
                ts, x_phi, x_psi, beta, g=cfg["initial"][2])
            report.append(
                f"second_order {f} {sweep}={value:g}: "
                + " ".join(f"{k}={coeffs[k]:.6g}" for k in "DEFG")
                + f" rms={rms:.4g}")

    _atomic_write(os.path.join(outdir, "report.txt"),
                  "\n".join(report) + "\n")
    return outdir


# -- entry point -------------------------------------------------------------

def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="quenchlab",
        description="Quench-relaxation experiment runner")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="execute a manifest")
    p_run.add_argument("manifest", help="bundled name or path")
    p_run.add_argument("--outdir", default=None)
    p_val = sub.add_parser("validate", help="check a manifest")
    p_val.add_argument("manifest", help="bundled name or path")
    sub.add_parser("list", help="list bundled manifests")
    p_rep = sub.add_parser("report", help="print a run's report")
    p_rep.add_argument("directory")
    args = parser.parse_args(argv)

    if args.command == "list":
        for name, text in bundled_manifests().items():
            m = load_manifest(text)
            desc = m.get("experiment", {}).get("description", "")
            print(f"{name}: {desc}")
        return 0

    if args.command == "validate":
        try:
            m = resolve_manifest(args.manifest)
        except Exception as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        problems = validate_manifest(m)
        if problems:
            for p in problems:
                print(f"invalid: {p}", file=sys.stderr)
            return 1
        print("ok")
        return 0

    if args.command == "run":
        try:
            m = resolve_manifest(args.manifest)
        except Exception as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        try:
            outdir = run_manifest(m, args.outdir)
        except ValidationFailure as exc:
            for p in exc.problems:
                print(f"invalid: {p}", file=sys.stderr)
            return 1
        except Exception as exc:
            print(f"error [{m.get('experiment', {}).get('id', '?')}]: {exc}",
                  file=sys.stderr)
            return 2
        print(outdir)
        return 0

    if args.command == "report":
        path = os.path.join(args.directory, "report.txt")
        if not os.path.exists(path):
            print(f"error: no report at {path}", file=sys.stderr)
            return 2
        with open(path) as fh:
            sys.stdout.write(fh.read())
        return 0
    return 2


if __name__ == "__main__":
    sys.exit(main())
