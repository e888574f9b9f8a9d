"""Two-site DMRG ground-state search with a generic nearest-neighbour MPO.

Two-site bond matrices from the chain builder are split into operator
Schmidt factors, so any nearest-neighbour model (including the fused
ANNNI chain) maps onto the same MPO layout.  Degenerate ordered phases
are resolved by a weak symmetry-breaking pinning field.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh

from ..models import perturbation
from .chains import chain_of
from .state import TensorNetworkState

_PIN_STRENGTH = 1e-4
_PIN_MAX_L = 1000


def _schmidt_factors(mat, d, tol=1e-12):
    """Split a (d^2, d^2) two-site matrix into sum_k L_k (x) R_k."""
    m = mat.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    u, s, vh = np.linalg.svd(m)
    keep = s > tol * (s[0] if s.size else 1.0)
    left = [(u[:, k] * np.sqrt(s[k])).reshape(d, d) for k in np.nonzero(keep)[0]]
    right = [(vh[k] * np.sqrt(s[k])).reshape(d, d) for k in np.nonzero(keep)[0]]
    return left, right


def build_mpo(chain):
    """MPO tensors W[i] with index order (wl, p_out, p_in, wr)."""
    L, d = chain.length, chain.local_dim
    onsite = [np.zeros((d, d), dtype=complex) for _ in range(L)]
    starts = [[] for _ in range(L)]       # (L_k, R_k) for bonds starting at i
    for csites, coef, mat in chain.terms:
        if len(csites) == 1:
            onsite[csites[0]] += coef * mat
        else:
            lf, rf = _schmidt_factors(coef * mat, d)
            starts[csites[0]].extend(zip(lf, rf))

    eye = np.eye(d, dtype=complex)
    tensors = []
    for i in range(L):
        n_in = len(starts[i - 1]) if i > 0 else 0
        n_out = len(starts[i]) if i < L - 1 else 0
        wl, wr = 2 + n_in, 2 + n_out
        W = np.zeros((wl, d, d, wr), dtype=complex)
        W[0, :, :, 0] = eye
        W[0, :, :, wr - 1] = onsite[i]
        W[wl - 1, :, :, wr - 1] = eye
        for k, (lf, _) in enumerate(starts[i]):
            W[0, :, :, 1 + k] = lf
        if i > 0:
            for k, (_, rf) in enumerate(starts[i - 1]):
                W[1 + k, :, :, wr - 1] = rf
        tensors.append(W)
    tensors[0] = tensors[0][:1]
    tensors[-1] = tensors[-1][:, :, :, -1:]
    return tensors


def _update_left(env, A, W):
    return np.einsum("axb,apl,xpqy,bqm->lym", env, A.conj(), W, A,
                     optimize=True)


def _update_right(env, B, W):
    return np.einsum("cyd,rpc,zpqy,sqd->rzs", env, B.conj(), W, B,
                     optimize=True)


def _bond_operators(Lenv, W1, W2, Renv):
    """Pre-contracted environment halves for the two-site eigenproblem."""
    LW = np.einsum("lxm,xpiy->lpiym", Lenv, W1, optimize=True)
    RW = np.einsum("yqjz,rzs->yqjrs", W2, Renv, optimize=True)
    return LW, RW


def _local_matvec(LW, RW, theta):
    # theta (m,i,j,s) x RW (y,q,j,r,s) over (j,s) -> (m,i,y,q,r)
    t1 = np.tensordot(theta, RW, axes=([2, 3], [2, 4]))
    # LW (l,p,i,y,m) x t1 (m,i,y,q,r) over (i,y,m) -> (l,p,q,r)
    return np.tensordot(LW, t1, axes=([2, 3, 4], [1, 2, 0]))


def dmrg_ground_state(model, chi_max=64, pinning="auto", perturbations=(),
                      tol_factor=1e-10, trunc_tol=1e-12, max_sweeps=40,
                      init=None):
    """Variational ground state of a (possibly perturbed) open chain.

    pinning="auto" adds a weak order-parameter field (strength 1e-4 for
    L < 1000, none beyond) so ordered phases converge onto one
    symmetry-broken ground state; pass None or an explicit
    PerturbationSpec to override.  Sweeps stop when the energy changes by
    less than tol_factor * J * L over a full sweep.  Returns
    (state, energy, info).
    """
    perts = list(perturbations)
    if pinning == "auto":
        if model.L < _PIN_MAX_L:
            perts.append(perturbation(model.kind, "sigma",
                                      _PIN_STRENGTH * model.J))
    elif pinning is not None:
        perts.append(pinning)

    chain = chain_of(model, perts)
    mpo = build_mpo(chain)
    L, d = chain.length, chain.local_dim

    if init is None:
        v = np.zeros(d)
        v[0] = 1.0
        state = TensorNetworkState.product_state([v] * L)
    else:
        state = init.copy()
    state.canonicalize(0)

    Renv = [None] * (L + 1)
    Renv[L] = np.ones((1, 1, 1), dtype=complex)
    for i in range(L - 1, 0, -1):
        Renv[i] = _update_right(Renv[i + 1], state.tensors[i], mpo[i])
    Lenv = [None] * (L + 1)
    Lenv[0] = np.ones((1, 1, 1), dtype=complex)

    def optimize_bond(i, to_right):
        a, b = state.tensors[i], state.tensors[i + 1]
        theta = np.tensordot(a, b, axes=(2, 0))
        shape = theta.shape
        dim = theta.size
        LW, RW = _bond_operators(Lenv[i], mpo[i], mpo[i + 1], Renv[i + 2])

        def matvec(x):
            return _local_matvec(LW, RW, x.reshape(shape)).ravel()

        if dim <= 256:
            H = np.empty((dim, dim), dtype=complex)
            eye = np.eye(dim)
            for c in range(dim):
                H[:, c] = matvec(eye[:, c])
            w, v = np.linalg.eigh(0.5 * (H + H.conj().T))
            e0, vec = float(w[0]), v[:, 0]
        else:
            op = LinearOperator((dim, dim), matvec=matvec, dtype=complex)
            w, v = eigsh(op, k=1, which="SA", v0=theta.ravel(),
                         tol=1e-9, maxiter=5000)
            e0, vec = float(w[0]), v[:, 0]

        th = vec.reshape(shape[0] * shape[1], shape[2] * shape[3])
        u, s, vh = np.linalg.svd(th, full_matrices=False)
        keep = len(s)
        tail = np.cumsum((s ** 2)[::-1])[::-1]
        total = float(np.sum(s ** 2))
        ok = np.nonzero(tail <= trunc_tol * total)[0]
        if ok.size:
            keep = max(1, int(ok[0]))
        keep = max(1, min(keep, chi_max))
        s = s[:keep] / np.sqrt(np.sum(s[:keep] ** 2))
        if to_right:
            state.tensors[i] = u[:, :keep].reshape(shape[0], shape[1], keep)
            state.tensors[i + 1] = (s[:, None] * vh[:keep]).reshape(
                keep, shape[2], shape[3])
            state.center = i + 1
            Lenv[i + 1] = _update_left(Lenv[i], state.tensors[i], mpo[i])
        else:
            state.tensors[i] = (u[:, :keep] * s[None, :]).reshape(
                shape[0], shape[1], keep)
            state.tensors[i + 1] = vh[:keep].reshape(keep, shape[2], shape[3])
            state.center = i
            Renv[i + 1] = _update_right(Renv[i + 2], state.tensors[i + 1],
                                        mpo[i + 1])
        return e0

    tol_energy = tol_factor * abs(model.J) * model.L
    energy = np.inf
    trace = []
    for sweep in range(1, max_sweeps + 1):
        for i in range(L - 1):
            e = optimize_bond(i, to_right=True)
        for i in range(L - 2, -1, -1):
            e = optimize_bond(i, to_right=False)
        trace.append(e)
        if abs(energy - e) < tol_energy:
            energy = e
            break
        energy = e
    else:
        raise RuntimeError(
            f"DMRG did not converge in {max_sweeps} sweeps; energy trace "
            f"tail: {[f'{x:.12g}' for x in trace[-5:]]}")

    info = {"sweeps": sweep, "energy_trace": trace,
            "chi_max_used": state.max_chi(), "pinned": bool(perts)}
    return state, energy, info
