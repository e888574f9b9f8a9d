"""Trotter decompositions of nearest-neighbour chain Hamiltonians.

A step of the second-order (Strang) scheme is even-bond half step,
odd-bond full step, even-bond half step.  The fourth-order scheme is the
standard five-stage composition of Strang steps with stage fractions
(u, u, 1-4u, u, u), u = 1/(4 - 4^(1/3)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

_U4 = 1.0 / (4.0 - 4.0 ** (1.0 / 3.0))


@dataclass(frozen=True)
class TrotterPlan:
    """Time step and composition order for a TEBD run."""

    order: int = 4
    dt: float = 0.1

    def __post_init__(self):
        if self.order not in (2, 4):
            raise ValueError(f"order must be 2 or 4, got {self.order}")
        if not (self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")

    def stage_fractions(self):
        if self.order == 2:
            return (1.0,)
        return (_U4, _U4, 1.0 - 4.0 * _U4, _U4, _U4)


def step_layers(chain, plan, imag=False):
    """Gate layers for one full Trotter step.

    Returns a list of layers; each layer is a list of (bond, gate) pairs
    on disjoint bonds, ordered left to right.  imag=True produces
    imaginary-time gates exp(-h dt) instead of exp(-i h dt).
    """
    n_bonds = len(chain.bond_hams)
    even = list(range(0, n_bonds, 2))
    odd = list(range(1, n_bonds, 2))

    def gates(bonds, frac):
        factor = -frac * plan.dt if imag else -1j * frac * plan.dt
        return [(b, expm(factor * chain.bond_hams[b])) for b in bonds]

    layers = []
    for frac in plan.stage_fractions():
        layers.append(gates(even, 0.5 * frac))
        layers.append(gates(odd, frac))
        layers.append(gates(even, 0.5 * frac))
    return layers
