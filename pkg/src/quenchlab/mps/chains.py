"""Translate lattice models into MPS-ready chains.

TFI and Potts chains map one spin site to one MPS site.  ANNNI couples
next-nearest neighbours, so pairs of spin sites are fused into one
4-dimensional MPS site, turning every interaction into a nearest-neighbour
one.  The module also builds per-bond Hamiltonians (single-site terms split
half/half onto adjacent bonds, full weight at the edges) and lifts window
operators onto the physical or ancilla half of purified states.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from ..models import local_operator, perturbation_terms


def lift_window_operator(op, base_dim, n_sites, on_ancilla=False):
    """Embed an n-site operator into fused (physical x ancilla) legs.

    Returns the operator acting as op x identity on the purified chain
    (or identity x op when on_ancilla), with each site's physical and
    ancilla indices fused into one leg of dimension base_dim**2.
    """
    d, n = base_dim, n_sites
    op = np.asarray(op).reshape([d] * (2 * n))
    eye = np.eye(d ** n).reshape([d] * (2 * n))
    phys, anc = (eye, op) if on_ancilla else (op, eye)
    full = np.multiply.outer(phys, anc)
    # axes: p_out[0:n], p_in[n:2n], a_out[2n:3n], a_in[3n:4n]
    perm = []
    for k in range(n):
        perm += [k, 2 * n + k]
    for k in range(n):
        perm += [n + k, 3 * n + k]
    D = d * d
    return full.transpose(perm).reshape(D ** n, D ** n)


def _window_matrix(local_dim, positions, ops, span):
    """Dense matrix on `span` consecutive sites with ops at positions."""
    eye = np.eye(local_dim, dtype=complex)
    slots = [eye] * span
    for p, lab in zip(positions, ops):
        slots[p] = slots[p] @ local_operator(local_dim, lab)
    return reduce(np.kron, slots)


@dataclass
class Chain:
    """An MPS-ready nearest-neighbour chain derived from a spin model."""

    model: object
    length: int
    local_dim: int
    paired: bool
    terms: tuple          # ((chain_sites), coef, window matrix)
    bond_hams: list       # dense (d^2, d^2) per bond, edge weights folded in

    def term_window(self, spin_term):
        """Map a spin-lattice term to (start, coef, matrix, span) on the chain."""
        sites, coef, ops = spin_term
        if self.paired:
            blocks = [s // 2 for s in sites]
            b0, b1 = min(blocks), max(blocks)
            span = b1 - b0 + 1
            positions = [s - 2 * b0 for s in sites]
            mat = _window_matrix(2, positions, ops, 2 * span)
            return b0, coef, mat, span
        i0, i1 = min(sites), max(sites)
        span = i1 - i0 + 1
        mat = _window_matrix(self.local_dim, [s - i0 for s in sites], ops, span)
        return i0, coef, mat, span

    def expectation_terms(self, state, spin_terms):
        """Sum of coef * <window op> over a spin-term list."""
        total = 0.0 + 0.0j
        for term in spin_terms:
            i0, coef, mat, span = self.term_window(term)
            if state.purified:
                mat = lift_window_operator(mat, self.local_dim, span)
            total += coef * state.expectation_window(i0, mat, span)
        return complex(total)

    def energy(self, state):
        """<H> from the bond Hamiltonians (physical half for purified states)."""
        total = 0.0
        for b, h in enumerate(self.bond_hams):
            op = (lift_window_operator(h, self.local_dim, 2)
                  if state.purified else h)
            total += state.expectation_window(b, op, 2).real
        return total


def chain_of(model, perturbations=()):
    """Build the MPS chain (terms and bond Hamiltonians) for a model."""
    if model.boundary != "open":
        raise ValueError(
            "the tensor-network engine handles open chains only; "
            f"got boundary={model.boundary!r}")
    paired = model.kind == "ANNNI"
    if paired and model.L % 2:
        raise ValueError(f"ANNNI chains require even L, got L={model.L}")
    length = model.L // 2 if paired else model.L
    local_dim = 4 if paired else model.local_dim
    if length < 2:
        raise ValueError(f"need at least 2 chain sites, got {length}")

    spin_terms = list(model.terms)
    for p in perturbations:
        spin_terms.extend(perturbation_terms(p, model.L))

    chain = Chain(model, length, local_dim, paired, (), [])
    cterms = []
    for term in spin_terms:
        i0, coef, mat, span = chain.term_window(term)
        if span > 2:
            raise ValueError(
                f"Hamiltonian term on sites {term[0]} spans {span} chain "
                "sites; only nearest-neighbour chains are supported")
        cterms.append((tuple(range(i0, i0 + span)), coef, mat))
    chain.terms = tuple(cterms)

    d = local_dim
    eye = np.eye(d, dtype=complex)
    bonds = [np.zeros((d * d, d * d), dtype=complex)
             for _ in range(length - 1)]
    for csites, coef, mat in cterms:
        if len(csites) == 2:
            bonds[csites[0]] += coef * mat
        else:
            s = csites[0]
            if s == 0:
                bonds[0] += coef * np.kron(mat, eye)
            elif s == length - 1:
                bonds[-1] += coef * np.kron(eye, mat)
            else:
                bonds[s - 1] += 0.5 * coef * np.kron(eye, mat)
                bonds[s] += 0.5 * coef * np.kron(mat, eye)
    chain.bond_hams = bonds
    return chain
