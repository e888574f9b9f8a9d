import numpy as np
import pytest

from quenchlab.series import TimeSeries, from_csv


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        TimeSeries(np.arange(3.0), np.arange(4.0), "x", "ed")


def test_csv_roundtrip_exact():
    t = np.linspace(0, 1, 7)
    v = np.exp(-t) * (1 + 0.5j)
    ts = TimeSeries(t, v, "epsilon", "freefermion", {"L": 10, "g": 0.1})
    ts.flags["note"] = "demo"
    back = from_csv(ts.to_csv())
    assert back.observable == "epsilon"
    assert back.engine == "freefermion"
    assert np.allclose(back.times, t)
    assert np.allclose(back.values, v)
    assert back.provenance["L"] == "10"
    assert back.flags["note"] == "demo"


def test_truncation_columns_roundtrip():
    t = np.arange(4.0)
    ts = TimeSeries(t, t * 0.1, "sigma", "mps", {})
    ts.discarded_weight = np.array([0.0, 1e-12, 2e-12, 3e-12])
    ts.chi_max_used = np.array([2, 4, 8, 8])
    back = from_csv(ts.to_csv())
    assert np.allclose(back.discarded_weight, ts.discarded_weight)
    assert np.array_equal(back.chi_max_used, ts.chi_max_used)


def test_restricted_window():
    t = np.linspace(0, 10, 11)
    ts = TimeSeries(t, t, "sigma", "ed", {})
    ts.discarded_weight = t * 0.0
    ts.chi_max_used = np.ones(11, dtype=int)
    cut = ts.restricted(2.0, 5.0)
    assert cut.times[0] == 2.0 and cut.times[-1] == 5.0
    assert len(cut.discarded_weight) == len(cut.times)


def test_determinism():
    t = np.linspace(0, 2, 5)
    ts = TimeSeries(t, np.sin(t), "sigma", "ed", {"a": 1})
    assert ts.to_csv() == ts.to_csv()
