"""Dense exact-diagonalization oracles for small chains.

These provide reference ground states, Gibbs states, and spectrally exact
time evolution for Hilbert-space dimensions up to ~4096, against which the
tensor-network engine is validated.
"""

from __future__ import annotations

import numpy as np

from ..models import dense_hamiltonian, dense_operator
from ..series import TimeSeries

MAX_DENSE_DIM = 4096


def _check_dim(model):
    dim = model.local_dim ** model.L
    if dim > MAX_DENSE_DIM:
        raise ValueError(
            f"dense reference limited to dimension {MAX_DENSE_DIM}, "
            f"got {dim} (L={model.L}, d={model.local_dim})")
    return dim


def dense_ground(model, perturbations=()):
    """(E0, ground vector) of the dense Hamiltonian."""
    _check_dim(model)
    H = dense_hamiltonian(model, perturbations)
    w, v = np.linalg.eigh(H)
    return float(w[0]), v[:, 0]


def dense_gibbs(model, beta, perturbations=()):
    """Normalized Gibbs density matrix exp(-beta H)/Z."""
    if not (beta > 0) or not np.isfinite(beta):
        raise ValueError(f"beta must be finite and positive, got {beta}")
    _check_dim(model)
    H = dense_hamiltonian(model, perturbations)
    w, v = np.linalg.eigh(H)
    boltz = np.exp(-beta * (w - w[0]))
    boltz /= boltz.sum()
    return (v * boltz) @ v.conj().T


def ed_reference(model, initial, times, observables, perturbations=()):
    """Spectrally exact evolution of a small chain.

    initial is a state vector or a density matrix; observables maps a name
    to a spin-lattice term list ((sites, coef, op_labels), ...).  Returns
    {name: TimeSeries} with engine "ed".
    """
    _check_dim(model)
    H = dense_hamiltonian(model, perturbations)
    w, v = np.linalg.eigh(H)
    times = np.asarray(times, dtype=float)
    initial = np.asarray(initial, dtype=complex)
    is_rho = initial.ndim == 2

    ops = {name: dense_operator(model.L, model.local_dim, terms)
           for name, terms in observables.items()}
    out = {name: np.empty(len(times), dtype=complex) for name in ops}

    if is_rho:
        rho_eig = v.conj().T @ initial @ v
        ops_eig = {n: v.conj().T @ O @ v for n, O in ops.items()}
        for i, t in enumerate(times):
            ph = np.exp(-1j * w * t)
            rho_t = (ph[:, None] * rho_eig) * ph.conj()[None, :]
            for name, O in ops_eig.items():
                out[name][i] = np.trace(rho_t @ O)
    else:
        c = v.conj().T @ initial
        for i, t in enumerate(times):
            psi = v @ (np.exp(-1j * w * t) * c)
            for name, O in ops.items():
                out[name][i] = psi.conj() @ O @ psi
    prov = dict(model.header_dict())
    return {name: TimeSeries(times, vals, name, "ed", dict(prov))
            for name, vals in out.items()}
