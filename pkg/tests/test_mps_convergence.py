import numpy as np
import pytest

from quenchlab.mps import convergence_certify
from quenchlab.series import TimeSeries


def series(values, t):
    return TimeSeries(t, values, "epsilon", "mps", {})


def test_certified_time_is_first_divergence():
    t = np.linspace(0.0, 8.0, 81)
    base = np.exp(-0.3 * t)
    runs = {
        (8, 16): {"epsilon": series(base * (1 + 0.2 * (t > 3.2)), t)},
        (16, 16): {"epsilon": series(base, t)},
        (16, 8): {"epsilon": series(base * (1 + 0.2 * (t > 5.0)), t)},
    }
    out = convergence_certify(runs, rel_tol=0.05)
    assert out["t_converged"] == pytest.approx(3.3, abs=0.11)
    pairs = {d["pair"] for d in out["comparisons"].values()}
    assert ((8, 16), (16, 16)) in pairs
    assert ((16, 8), (16, 16)) in pairs


def test_agreeing_runs_certify_to_the_end():
    t = np.linspace(0.0, 5.0, 26)
    v = np.cos(t) * np.exp(-0.1 * t)
    runs = {(L, c): {"epsilon": series(v, t)}
            for L in (8, 16) for c in (8, 16)}
    out = convergence_certify(runs)
    assert out["t_converged"] == pytest.approx(5.0)


def test_floor_ignores_tiny_signals():
    # relative deviation on values below floor_frac * peak must not trigger
    t = np.linspace(0.0, 10.0, 101)
    a = np.exp(-2.0 * t)
    b = a * (1 + 0.5 * (a < 1e-5))
    runs = {
        (8, 16): {"epsilon": series(b, t)},
        (16, 16): {"epsilon": series(a, t)},
        (16, 8): {"epsilon": series(a, t)},
    }
    out = convergence_certify(runs, rel_tol=0.05, floor_frac=1e-3)
    assert out["t_converged"] == pytest.approx(10.0)


def test_missing_refinement_axes_rejected():
    t = np.linspace(0.0, 1.0, 12)
    v = np.ones_like(t)
    with pytest.raises(ValueError):
        convergence_certify({(8, 16): {"e": series(v, t)},
                             (16, 16): {"e": series(v, t)}})
    with pytest.raises(ValueError):
        convergence_certify({(16, 8): {"e": series(v, t)},
                             (16, 16): {"e": series(v, t)}})


def test_disjoint_observables_rejected():
    t = np.linspace(0.0, 1.0, 12)
    v = np.ones_like(t)
    runs = {
        (8, 16): {"a": series(v, t)},
        (16, 16): {"b": series(v, t)},
        (16, 8): {"b": series(v, t)},
    }
    with pytest.raises(ValueError):
        convergence_certify(runs)
