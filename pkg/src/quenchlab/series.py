"""Sampled observable trajectories with provenance, and their CSV format.

Every engine emits the same layout: a '#'-prefixed header block of
key = value provenance lines, then a column header, then data rows.
Truncation columns stay empty for exact engines.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np


@dataclass
class TimeSeries:
    times: np.ndarray            # in units of Jt
    values: np.ndarray           # complex or real
    observable: str
    engine: str                  # "freefermion" | "mps" | "ed" | "prediction"
    provenance: dict = field(default_factory=dict)
    discarded_weight: np.ndarray | None = None   # per-sample cumulative
    chi_max_used: np.ndarray | None = None
    flags: dict = field(default_factory=dict)    # e.g. plateau diagnostics

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values)
        if self.times.shape != self.values.shape:
            raise ValueError("times and values must have matching shapes")

    @property
    def real(self):
        return np.real(self.values)

    def restricted(self, t_min=-np.inf, t_max=np.inf):
        m = (self.times >= t_min) & (self.times <= t_max)
        out = TimeSeries(self.times[m], self.values[m], self.observable,
                         self.engine, dict(self.provenance))
        if self.discarded_weight is not None:
            out.discarded_weight = self.discarded_weight[m]
        if self.chi_max_used is not None:
            out.chi_max_used = self.chi_max_used[m]
        out.flags = dict(self.flags)
        return out

    def to_csv(self):
        buf = io.StringIO()
        buf.write(f"# observable = {self.observable}\n")
        buf.write(f"# engine = {self.engine}\n")
        for k in sorted(self.provenance):
            buf.write(f"# {k} = {self.provenance[k]}\n")
        for k in sorted(self.flags):
            buf.write(f"# flag:{k} = {self.flags[k]}\n")
        has_trunc = self.discarded_weight is not None
        cols = "Jt,value_re,value_im,engine,truncation_max"
        if has_trunc:
            cols += ",discarded_weight,chi_max_used"
        buf.write(cols + "\n")
        for i, t in enumerate(self.times):
            v = complex(self.values[i])
            row = f"{t:.12g},{v.real:.16g},{v.imag:.16g},{self.engine},"
            if has_trunc:
                dw = self.discarded_weight[i]
                row += f"{dw:.6g},{dw:.6g},{int(self.chi_max_used[i])}"
            buf.write(row + "\n")
        return buf.getvalue()

    def write_csv(self, path):
        with open(path, "w") as fh:
            fh.write(self.to_csv())


def from_csv(path_or_text):
    """Parse a TimeSeries CSV (path or literal text)."""
    if "\n" in str(path_or_text):
        text = path_or_text
    else:
        with open(path_or_text) as fh:
            text = fh.read()
    provenance, flags = {}, {}
    observable = engine = None
    times, values, dw, chi = [], [], [], []
    header_seen = False
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, val = line[1:].partition("=")
            key, val = key.strip(), val.strip()
            if key == "observable":
                observable = val
            elif key == "engine":
                engine = val
            elif key.startswith("flag:"):
                flags[key[5:]] = val
            else:
                provenance[key] = val
            continue
        if not header_seen:
            header_seen = True
            has_trunc = "discarded_weight" in line
            continue
        parts = line.split(",")
        times.append(float(parts[0]))
        values.append(complex(float(parts[1]), float(parts[2])))
        if has_trunc:
            dw.append(float(parts[5]))
            chi.append(int(parts[6]))
    ts = TimeSeries(np.array(times), np.array(values), observable or "?",
                    engine or "?", provenance)
    if dw:
        ts.discarded_weight = np.array(dw)
        ts.chi_max_used = np.array(chi)
    ts.flags = flags
    return ts
