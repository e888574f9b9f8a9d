"""Lattice models: critical spin chains, their perturbations, and the
operator dictionary for the fields measured after a quench.

Three Hamiltonians are supported, all with energy scale J (J=1 by default,
times reported as Jt):

  TFI:    H = -J sum_i [ Z_i Z_{i+1} + (1-g) X_i ]
  Potts:  H = -J sum_i [ s_i^dag s_{i+1} + (1-g) tau_i + h.c. ]
  ANNNI:  H = H_TFI - J*gamma sum_i [ X_i X_{i+1} + Z_i Z_{i+2} ]

g=0 is the critical point by construction.  Sites are 0-based and
measurements default to the central site L//2 (central bond for two-site
operators).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

import numpy as np

OMEGA = np.exp(2j * np.pi / 3)

# single-site operator tables, keyed by local dimension
_PAULI = {
    "I": np.eye(2),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]]),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]]),
}

_S = np.diag([1.0 + 0j, OMEGA, OMEGA**2])
_TAU = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)

_POTTS = {
    "I": np.eye(3, dtype=complex),
    "s": _S,
    "sdag": _S.conj().T,
    "tau": _TAU,
    "taudag": _TAU.conj().T,
    "tau2": _TAU @ _TAU,
    # on-site products appearing in the parafermion bilinear
    "sdag.tau": _S.conj().T @ _TAU,
    "sdag.tau2": _S.conj().T @ _TAU @ _TAU,
    "s.s": _S @ _S,
}


def local_operator(local_dim, label):
    """Return the dense single-site matrix for an operator label."""
    table = _PAULI if local_dim == 2 else _POTTS
    try:
        return table[label]
    except KeyError:
        raise KeyError(f"unknown operator label {label!r} for local_dim={local_dim}")


@dataclass(frozen=True)
class SpinChainModel:
    """A lattice Hamiltonian as a coefficient list over local terms.

    terms is a tuple of (sites, coefficient, op_labels); each entry
    contributes coefficient * prod_k op_labels[k] acting on sites[k].
    """

    kind: str                 # "TFI" | "Potts" | "ANNNI"
    L: int
    J: float = 1.0
    g: float = 0.0
    gamma: float = 0.0
    boundary: str = "open"    # "open" | "periodic"
    local_dim: int = 2
    terms: tuple = field(default_factory=tuple)

    @property
    def center_site(self):
        return self.L // 2

    @property
    def center_bond(self):
        return (self.L // 2, self.L // 2 + 1)

    def header_dict(self):
        """Provenance key-values embedded in output file headers."""
        return {
            "kind": self.kind,
            "L": self.L,
            "J": self.J,
            "g": self.g,
            "gamma": self.gamma,
            "boundary": self.boundary,
        }


@dataclass(frozen=True)
class PrimaryFieldSpec:
    """A measurable field: scaling data plus its lattice operator.

    lattice_operator is a tuple of (offsets, coefficient, op_labels)
    relative to the measurement site.
    """

    label: str
    scaling_dimension: Fraction
    nu: Fraction
    lattice_operator: tuple
    hermitian: bool


@dataclass(frozen=True)
class PerturbationSpec:
    """A perturbation g_psi * H_psi added to the critical Hamiltonian."""

    field_label: str
    strength: float
    terms: tuple     # same (sites, coef, ops) encoding as SpinChainModel


KINDS = ("TFI", "Potts", "ANNNI")

# ANNNI criticality window for the Ising universality class
ANNNI_GAMMA_WINDOW = (-0.3, 250.0)

# quasiparticle velocity of the critical TFI/ANNNI chain (dispersion
# 4J|sin(k/2)|, slope 2J at k=0); not needed for Potts analyses
TFI_VELOCITY = 2.0


def build_model(kind, L, J=1.0, g=0.0, gamma=0.0, boundary="open"):
    """Assemble a SpinChainModel with a deterministic term ordering."""
    if kind not in KINDS:
        raise ValueError(f"unknown model kind {kind!r}; expected one of {KINDS}")
    if boundary not in ("open", "periodic"):
        raise ValueError(f"boundary must be 'open' or 'periodic', got {boundary!r}")
    min_L = 3 if kind == "ANNNI" else 2
    if L < min_L:
        raise ValueError(f"{kind} requires L >= {min_L}, got L={L}")
    if kind == "ANNNI":
        lo, hi = ANNNI_GAMMA_WINDOW
        if not (lo < gamma < hi):
            raise ValueError(
                f"ANNNI gamma={gamma} lies outside the critical-Ising window "
                f"({lo}, {hi}); the low-energy theory is not an Ising CFT there"
            )
    elif gamma != 0.0:
        raise ValueError(f"gamma is only meaningful for ANNNI, got gamma={gamma}")

    local_dim = 3 if kind == "Potts" else 2
    n_bonds = L if boundary == "periodic" else L - 1
    terms = []

    if kind in ("TFI", "ANNNI"):
        for i in range(n_bonds):
            terms.append(((i, (i + 1) % L), -J, ("Z", "Z")))
        for i in range(L):
            terms.append(((i,), -J * (1.0 - g), ("X",)))
        if kind == "ANNNI":
            for i in range(n_bonds):
                terms.append(((i, (i + 1) % L), -J * gamma, ("X", "X")))
            n_nnn = L if boundary == "periodic" else L - 2
            for i in range(n_nnn):
                terms.append(((i, (i + 2) % L), -J * gamma, ("Z", "Z")))
    else:  # Potts
        for i in range(n_bonds):
            j = (i + 1) % L
            terms.append(((i, j), -J, ("sdag", "s")))
            terms.append(((i, j), -J, ("s", "sdag")))
        for i in range(L):
            terms.append(((i,), -J * (1.0 - g), ("tau",)))
            terms.append(((i,), -J * (1.0 - g), ("taudag",)))

    return SpinChainModel(
        kind=kind, L=L, J=J, g=g, gamma=gamma, boundary=boundary,
        local_dim=local_dim, terms=tuple(terms),
    )


_FIELD_TABLE = {
    ("TFI", "sigma"): PrimaryFieldSpec(
        "sigma", Fraction(1, 8), Fraction(1),
        (((0,), 1.0, ("Z",)),), hermitian=True),
    ("TFI", "epsilon"): PrimaryFieldSpec(
        "epsilon", Fraction(1), Fraction(1),
        (((0, 1), 1.0, ("Z", "Z")), ((0,), -1.0, ("X",))), hermitian=True),
    ("Potts", "sigma"): PrimaryFieldSpec(
        "sigma", Fraction(2, 15), Fraction(5, 6),
        (((0,), 1.0, ("s",)),), hermitian=False),
    ("Potts", "epsilon"): PrimaryFieldSpec(
        "epsilon", Fraction(4, 5), Fraction(5, 6),
        (((0, 1), 1.0, ("s", "sdag")), ((0, 1), 1.0, ("sdag", "s")),
         ((0,), -1.0, ("tau",)), ((0,), -1.0, ("taudag",))), hermitian=True),
    ("Potts", "psipsibar"): PrimaryFieldSpec(
        "psipsibar", Fraction(4, 3), Fraction(5, 6),
        (((0,), 2.0, ("sdag",)),
         ((0,), -3.0 * OMEGA**2, ("sdag.tau",)),
         ((0,), -3.0 * OMEGA, ("sdag.tau2",)),
         ((-1, 0), -2.0, ("s", "s")),
         ((0, 1), -2.0, ("s", "s"))), hermitian=False),
}
# TFI and ANNNI share the Ising dictionary
for _f in ("sigma", "epsilon"):
    _FIELD_TABLE[("ANNNI", _f)] = _FIELD_TABLE[("TFI", _f)]

FIELD_LABELS = {
    "TFI": ("sigma", "epsilon"),
    "ANNNI": ("sigma", "epsilon"),
    "Potts": ("sigma", "epsilon", "psipsibar"),
}


def primary_field_operator(kind, field_label):
    """Lattice operator and scaling data for a primary field."""
    try:
        return _FIELD_TABLE[(kind, field_label)]
    except KeyError:
        raise ValueError(
            f"field {field_label!r} is not defined for model {kind!r}; "
            f"valid fields: {FIELD_LABELS.get(kind, ())}")


def field_terms_at(spec, site, L, boundary="open"):
    """Instantiate a field's lattice operator at a measurement site.

    Returns (sites, coef, ops) terms; offsets falling off an open chain
    raise, periodic chains wrap.
    """
    out = []
    for offsets, coef, ops in spec.lattice_operator:
        sites = []
        for off in offsets:
            s = site + off
            if boundary == "periodic":
                s %= L
            elif not (0 <= s < L):
                raise ValueError(
                    f"field {spec.label!r} at site {site} needs site {s} "
                    f"outside the open chain [0, {L})")
            sites.append(s)
        out.append((tuple(sites), coef, ops))
    return tuple(out)


def perturbation(kind, field_label, strength):
    """Translation-invariant perturbing Hamiltonian g * H_field.

    H_sigma = -J sum Z_i (TFI/ANNNI) or -J sum (s_i + s_i^dag) (Potts);
    H_eps   = -J sum X_i or -J sum (tau_i + tau_i^dag).
    The -J prefactor is folded into the stored coefficients with J=1;
    scale the model's J externally if needed.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    if field_label not in ("sigma", "epsilon"):
        raise ValueError(
            f"perturbations are defined for 'sigma' and 'epsilon', got {field_label!r}")
    strength = float(strength)
    if strength == 0.0:
        return PerturbationSpec(field_label, 0.0, ())

    def per_site(i):
        if kind in ("TFI", "ANNNI"):
            lab = "Z" if field_label == "sigma" else "X"
            return [((i,), -1.0, (lab,))]
        if field_label == "sigma":
            return [((i,), -1.0, ("s",)), ((i,), -1.0, ("sdag",))]
        return [((i,), -1.0, ("tau",)), ((i,), -1.0, ("taudag",))]

    # stored per-site templates with site index; instantiated for a given L
    return PerturbationSpec(field_label, strength, tuple(per_site(0)))


def perturbation_terms(pert, L):
    """Expand a PerturbationSpec over all sites of a chain of length L.

    Coefficients include the strength g_psi.
    """
    # all stored perturbation templates are single-site
    return tuple(((i,), pert.strength * coef, ops)
                 for _sites, coef, ops in pert.terms for i in range(L))


def dense_operator(L, local_dim, terms):
    """Dense matrix for a term list; only for small chains (d**L <= ~2e4)."""
    dim = local_dim**L
    if dim > 2**15:
        raise ValueError(f"dense operator of dimension {dim} is too large")
    H = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(local_dim)
    for sites, coef, ops in terms:
        factors = [eye] * L
        for s, lab in zip(sites, ops):
            factors[s] = factors[s] @ local_operator(local_dim, lab)
        H += coef * reduce(np.kron, factors)
    return H


def dense_hamiltonian(model, perturbations=()):
    """Dense Hamiltonian of a model plus optional perturbations."""
    terms = list(model.terms)
    for p in perturbations:
        terms.extend(perturbation_terms(p, model.L))
    return dense_operator(model.L, model.local_dim, terms)


def serialize_model(model):
    """Plain-text key-value descriptor used in output headers."""
    return "\n".join(f"{k} = {v}" for k, v in model.header_dict().items())
